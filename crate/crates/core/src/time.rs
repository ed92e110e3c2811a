//! Time base types: UTC timestamps, calendar dates and fixed-length intervals.
//!
//! All values are plain integers. Timestamps count microseconds since
//! 1970-01-01 00:00:00 UTC, dates count days since 1970-01-01, and intervals
//! are exact microsecond durations where one day is always 86 400 seconds.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use chrono::{DateTime, Datelike, NaiveDate, Timelike};

use crate::error::{Error, Result};

pub const USECS_PER_SEC: i64 = 1_000_000;
pub const USECS_PER_MINUTE: i64 = 60 * USECS_PER_SEC;
pub const USECS_PER_HOUR: i64 = 60 * USECS_PER_MINUTE;
pub const USECS_PER_DAY: i64 = 24 * USECS_PER_HOUR;

/// A point in time, in microseconds since the Unix epoch (UTC).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimestampTz(pub i64);

impl TimestampTz {
    pub const fn from_micros(micros: i64) -> Self {
        TimestampTz(micros)
    }

    pub const fn micros(self) -> i64 {
        self.0
    }

    /// Builds a UTC timestamp from calendar fields.
    pub fn from_ymd_hms(
        year: i32,
        month: u32,
        day: u32,
        hour: u32,
        minute: u32,
        second: u32,
    ) -> Result<Self> {
        let date = NaiveDate::from_ymd_opt(year, month, day)
            .ok_or_else(|| Error::OutOfRange(format!("{year:04}-{month:02}-{day:02}")))?;
        let dt = date
            .and_hms_opt(hour, minute, second)
            .ok_or_else(|| Error::OutOfRange(format!("{hour:02}:{minute:02}:{second:02}")))?;
        Ok(TimestampTz(dt.and_utc().timestamp_micros()))
    }

    /// Seconds since the epoch as a float, for interpolation arithmetic.
    pub fn as_secs_f64(self) -> f64 {
        self.0 as f64 / USECS_PER_SEC as f64
    }

    pub fn date(self) -> Date {
        Date(self.0.div_euclid(USECS_PER_DAY) as i32)
    }

    pub fn checked_add(self, interval: Interval) -> Option<Self> {
        self.0.checked_add(interval.0).map(TimestampTz)
    }
}

impl Add<Interval> for TimestampTz {
    type Output = TimestampTz;

    fn add(self, rhs: Interval) -> TimestampTz {
        TimestampTz(self.0 + rhs.0)
    }
}

impl Sub<Interval> for TimestampTz {
    type Output = TimestampTz;

    fn sub(self, rhs: Interval) -> TimestampTz {
        TimestampTz(self.0 - rhs.0)
    }
}

impl Sub for TimestampTz {
    type Output = Interval;

    fn sub(self, rhs: TimestampTz) -> Interval {
        Interval(self.0 - rhs.0)
    }
}

impl fmt::Display for TimestampTz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(dt) = DateTime::from_timestamp_micros(self.0) else {
            return write!(f, "<timestamp {}>", self.0);
        };
        let dt = dt.naive_utc();
        write!(
            f,
            "{:04}-{:02}-{:02} {:02}:{:02}:{:02}",
            dt.year(),
            dt.month(),
            dt.day(),
            dt.hour(),
            dt.minute(),
            dt.second()
        )?;
        let frac = self.0.rem_euclid(USECS_PER_SEC);
        if frac != 0 {
            let digits = format!("{frac:06}");
            write!(f, ".{}", digits.trim_end_matches('0'))?;
        }
        f.write_str("+00")
    }
}

/// A calendar date, in days since 1970-01-01.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Date(pub i32);

impl Date {
    pub fn from_ymd(year: i32, month: u32, day: u32) -> Result<Self> {
        let date = NaiveDate::from_ymd_opt(year, month, day)
            .ok_or_else(|| Error::OutOfRange(format!("{year:04}-{month:02}-{day:02}")))?;
        Ok(Date((date - epoch()).num_days() as i32))
    }

    pub const fn days(self) -> i32 {
        self.0
    }

    /// Midnight UTC at the start of this date.
    pub fn to_timestamp(self) -> TimestampTz {
        TimestampTz(self.0 as i64 * USECS_PER_DAY)
    }
}

fn epoch() -> NaiveDate {
    NaiveDate::from_ymd_opt(1970, 1, 1).expect("valid epoch")
}

impl fmt::Display for Date {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match epoch().checked_add_signed(chrono::Duration::days(self.0 as i64)) {
            Some(d) => write!(f, "{:04}-{:02}-{:02}", d.year(), d.month(), d.day()),
            None => write!(f, "<date {}>", self.0),
        }
    }
}

/// A fixed duration in microseconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Interval(pub i64);

impl Interval {
    pub const ZERO: Interval = Interval(0);

    pub const fn from_micros(micros: i64) -> Self {
        Interval(micros)
    }

    pub const fn days(days: i64) -> Self {
        Interval(days * USECS_PER_DAY)
    }

    pub const fn hours(hours: i64) -> Self {
        Interval(hours * USECS_PER_HOUR)
    }

    pub const fn minutes(minutes: i64) -> Self {
        Interval(minutes * USECS_PER_MINUTE)
    }

    pub const fn seconds(seconds: i64) -> Self {
        Interval(seconds * USECS_PER_SEC)
    }

    pub const fn micros(self) -> i64 {
        self.0
    }

    pub fn as_secs_f64(self) -> f64 {
        self.0 as f64 / USECS_PER_SEC as f64
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval(self.0 + rhs.0)
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval(self.0 - rhs.0)
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval(-self.0)
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        Interval(iter.map(|i| i.0).sum())
    }
}

// PostgreSQL-style rendering: `2 days`, `1 day 01:00:00`, `-1 days -00:30:00`, `00:00:00`.
impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let days = self.0 / USECS_PER_DAY;
        let rest = self.0 % USECS_PER_DAY;
        if days != 0 {
            let unit = if days == 1 { "day" } else { "days" };
            write!(f, "{days} {unit}")?;
            if rest == 0 {
                return Ok(());
            }
            f.write_str(" ")?;
        }
        let sign = if rest < 0 { "-" } else { "" };
        let abs = rest.unsigned_abs();
        let usecs_per_hour = USECS_PER_HOUR as u64;
        let usecs_per_minute = USECS_PER_MINUTE as u64;
        let usecs_per_sec = USECS_PER_SEC as u64;
        let hours = abs / usecs_per_hour;
        let minutes = abs % usecs_per_hour / usecs_per_minute;
        let seconds = abs % usecs_per_minute / usecs_per_sec;
        let frac = abs % usecs_per_sec;
        write!(f, "{sign}{hours:02}:{minutes:02}:{seconds:02}")?;
        if frac != 0 {
            let digits = format!("{frac:06}");
            write!(f, ".{}", digits.trim_end_matches('0'))?;
        }
        Ok(())
    }
}
