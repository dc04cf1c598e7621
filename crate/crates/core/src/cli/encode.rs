//! JSON encodings: p-adics as little-endian digit arrays, field elements as
//! coefficient arrays (scalars over `F_p`), series as coefficient arrays and
//! function tables as value arrays in ascending residue order.

use serde_json::{json, Value};

use crate::arith::{FqElem, PadicInt};
use crate::linalg::Matrix;
use crate::profinite::LevelFn;
use crate::series::TruncSeries;

pub fn padic(a: &PadicInt) -> Value {
    json!(a.digits())
}

pub fn fq(x: &FqElem) -> Value {
    let n = x.field().degree();
    let mut c = x.coeffs();
    c.resize(n, 0);
    if n == 1 {
        json!(c[0])
    } else {
        json!(c)
    }
}

pub fn series(s: &TruncSeries<FqElem>) -> Value {
    Value::Array(s.coeffs().iter().map(fq).collect())
}

pub fn table(f: &LevelFn<FqElem>) -> Value {
    Value::Array(f.values().iter().map(fq).collect())
}

pub fn matrix(m: &Matrix<FqElem>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(fq).collect()))
            .collect(),
    )
}
