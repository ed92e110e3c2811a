use crate::error::ParseError;

/// Byte cursor over a literal with whitespace-skipping helpers.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

pub(crate) type PResult<T> = std::result::Result<T, ParseError>;

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn set_pos(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, message)
    }

    pub(crate) fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(pos, message)
    }

    pub(crate) fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    /// Next non-whitespace character, not consumed.
    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    /// Next character without skipping whitespace.
    pub(crate) fn peek_raw(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek_raw()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let message = match self.peek() {
                Some(found) => format!("expected '{c}', found '{found}'"),
                None => format!("expected '{c}', found end of input"),
            };
            Err(self.error(message))
        }
    }

    /// Consumes `kw` case-insensitively when it is not followed by an identifier character.
    pub(crate) fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if rest.len() < kw.len() || !rest.is_char_boundary(kw.len()) {
            return false;
        }
        if !rest[..kw.len()].eq_ignore_ascii_case(kw) {
            return false;
        }
        let next = rest[kw.len()..].chars().next();
        if next.is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            return false;
        }
        self.pos += kw.len();
        true
    }

    /// Consumes `prefix` case-insensitively with no word-boundary check.
    pub(crate) fn eat_prefix(&mut self, prefix: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if rest.len() >= prefix.len()
            && rest.is_char_boundary(prefix.len())
            && rest[..prefix.len()].eq_ignore_ascii_case(prefix)
        {
            self.pos += prefix.len();
            true
        } else {
            false
        }
    }

    /// Consumes a run of characters matching `pred`, without skipping whitespace first.
    pub(crate) fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if !pred(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    /// A numeric token: sign, digits, fraction, exponent.
    pub(crate) fn number_token(&mut self) -> PResult<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek_raw(), Some('+' | '-')) {
            self.pos += 1;
        }
        let int = self.take_while(|c| c.is_ascii_digit()).len();
        let mut frac = 0;
        if self.peek_raw() == Some('.') {
            self.pos += 1;
            frac = self.take_while(|c| c.is_ascii_digit()).len();
        }
        if int + frac == 0 {
            self.pos = start;
            return Err(self.error("expected a number"));
        }
        if matches!(self.peek_raw(), Some('e' | 'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek_raw(), Some('+' | '-')) {
                self.pos += 1;
            }
            if self.take_while(|c| c.is_ascii_digit()).is_empty() {
                self.pos = save;
            }
        }
        Ok(&self.src[start..self.pos])
    }

    /// Exactly `n` ASCII digits.
    pub(crate) fn digits(&mut self, n: usize) -> PResult<u32> {
        let start = self.pos;
        let s = self.take_while(|c| c.is_ascii_digit());
        if s.len() != n {
            return Err(self.error_at(start, format!("expected {n} digits")));
        }
        Ok(s.parse().expect("ascii digits"))
    }
}
