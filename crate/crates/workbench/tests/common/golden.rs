//! The seven sample expressions and their expected output, line breaks kept.

pub const CASES: &[(&str, &str)] = &[
    (
        "SELECT duration('{1@2025-01-01, 2@2025-01-02, \n  1@2025-01-03}'::TINT, true);",
        "2 days",
    ),
    (
        "SELECT shiftScale(tstzset '{2025-01-01, 2025-01-02, \n  2025-01-03}', '1 day', '1 hour');",
        r#"{"2025-01-02 00:00:00+00", "2025-01-02 00:30:00+00", "2025-01-02 01:00:00+00"}"#,
    ),
    (
        "SELECT expandSpace(stbox 'STBOX XT(((1.0,2.0),\n  (1.0,2.0)),[2025-01-01,2025-01-01])', 2.0);",
        "STBOX XT(((-1,0),(3,4)),[2025-01-01 00:00:00+00, 2025-01-01 00:00:00+00])",
    ),
    (
        "SELECT expandTime(tbox 'TBOXFLOAT XT([1.0,2.0],\n  [2025-01-01,2025-01-02])', interval '1 day');",
        "TBOXFLOAT XT([1, 2],[2024-12-31 00:00:00+00, 2025-01-03 00:00:00+00])",
    ),
    (
        "SELECT asEWKT(tgeometry('Point(1 1)',\n  tstzspan '[2025-01-01, 2025-01-02]', 'step'));",
        "[POINT(1 1)@2025-01-01 00:00:00+00, POINT(1 1)@2025-01-02 00:00:00+00]",
    ),
    (
        "SELECT tgeompoint '{[Point(1 1)@2025-01-01,\n  Point(2 2)@2025-01-02, Point(1 1)@2025-01-03],\n  [Point(3 3)@2025-01-04, Point(3 3)@2025-01-05]}'\n  && stbox 'STBOX X((10.0,20.0),(10.0,20.0))';",
        "false",
    ),
    (
        "SELECT asText(atTime(tgeompoint \n  '{[Point(1 1)@2025-01-01, Point(2 2)@2025-01-02, \n  Point(1 1)@2025-01-03],[Point(3 3)@2025-01-04, \n  Point(3 3)@2025-01-05]}', \n  tstzspan '[2025-01-01,2025-01-02]'));",
        "{[POINT(1 1)@2025-01-01 00:00:00+00, POINT(2 2)@2025-01-02 00:00:00+00]}",
    ),
];

pub fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
