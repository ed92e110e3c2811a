mod common;

use common::golden::{normalize, CASES};
use mobdb_workbench::eval::eval_expression;

#[test]
fn sample_expressions_match() {
    for (expr, expected) in CASES {
        let got = eval_expression(expr).unwrap_or_else(|e| panic!("{expr}: {e}"));
        assert_eq!(normalize(&got), normalize(expected), "{expr}");
    }
}
