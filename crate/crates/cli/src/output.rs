//! Rendering for `theta` and `table`.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use ramanujan_core::ball::{Certified, PrecisionPolicy};
use ramanujan_core::ramanujan::{self, default_radius, monotone_check, sandwich_check, theta_within, ThetaRecord};

use crate::{CliError, Format};

#[derive(Serialize)]
struct ThetaOut {
    n: u64,
    digits: u32,
    mid: String,
    rad: String,
    bits: u32,
}

/// Radius goal for `digits` printed places, never looser than the default.
fn radius_for(digits: u32) -> BigRational {
    let r = BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), digits as usize + 2));
    r.min(default_radius())
}

pub fn theta(n: u64, digits: u32, format: Format, policy: &PrecisionPolicy) -> Result<String, CliError> {
    let b = theta_within(n, policy, &radius_for(digits))?;
    let out = ThetaOut { n, digits, mid: b.mid_decimal(digits), rad: b.rad_scientific(), bits: b.prec() };
    Ok(match format {
        Format::Text => format!("{} ± {}\n", out.mid, out.rad),
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(&out).map_err(csv_err)?;
            into_string(w)?
        }
    })
}

/// One table row. Rationals are exact fraction strings such as `"1/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    pub theta_mid: String,
    pub theta_rad: String,
    pub alpha: String,
    pub beta: String,
    pub weak_lower: String,
    pub sandwich_ok: bool,
    pub monotone_ok: bool,
}

fn row(n: u64, policy: &PrecisionPolicy) -> Result<Row, CliError> {
    let rec = ThetaRecord::new(n, ramanujan::theta(n, policy)?);
    let sandwich_ok = sandwich_check(n, policy)? == Certified::True;
    let monotone_ok = monotone_check(n, policy)? == Certified::True;
    Ok(Row {
        n,
        theta_mid: rec.theta.mid().to_rational().to_string(),
        theta_rad: rec.theta.rad().to_rational().to_string(),
        alpha: rec.alpha.to_string(),
        beta: rec.beta.to_string(),
        weak_lower: rec.weak_lower.to_string(),
        sandwich_ok,
        monotone_ok,
    })
}

pub fn table_rows(from: u64, to: u64, policy: &PrecisionPolicy) -> Result<Vec<Row>, CliError> {
    (from..=to).into_par_iter().map(|n| row(n, policy)).collect()
}

pub fn render_table(rows: &[Row], format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => to_json(rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(csv_err)?;
            }
            into_string(w)?
        }
        Format::Text => {
            let mut s = format!(
                "{:>6}  {:<22} {:<10} {:>12} {:>12} {:>10}  {:<8} {:<8}\n",
                "n", "theta", "radius", "alpha", "beta", "weak", "sandwich", "monotone"
            );
            for r in rows {
                let q = |v: &str| v.parse::<BigRational>().expect("fraction string");
                s.push_str(&format!(
                    "{:>6}  {:<22} {:<10} {:>12} {:>12} {:>10}  {:<8} {:<8}\n",
                    r.n,
                    ramanujan_core::ball::rational_to_decimal(&q(&r.theta_mid), 18),
                    ramanujan_core::ball::scientific_upper(&q(&r.theta_rad)),
                    ramanujan_core::ball::rational_to_decimal(&q(&r.alpha), 8),
                    ramanujan_core::ball::rational_to_decimal(&q(&r.beta), 8),
                    ramanujan_core::ball::rational_to_decimal(&q(&r.weak_lower), 6),
                    r.sandwich_ok,
                    r.monotone_ok,
                ));
            }
            s
        }
    })
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn into_string(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}
