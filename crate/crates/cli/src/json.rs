//! JSON and CSV forms of library values. serde_json's default map is ordered, so object keys
//! come out sorted and output is byte-stable.

use serde_json::{json, Map, Value};
use thetaforge::linalg::Mat;
use thetaforge::numeric::CMat;
use thetaforge::rt_torus::ReducedSkein;
use thetaforge::scalar::{ComplexAP, CycScalar};
use thetaforge::verify::VerifyReport;
use thetaforge::{Error, Result};

pub fn cyc(c: &CycScalar) -> Value {
    json!({ "r": c.r(), "coeffs": c.coeff_strings() })
}

pub fn cyc_from(v: &Value) -> Result<CycScalar> {
    let bad = |m: &str| Error::InvalidArgument(format!("CycScalar JSON: {m}"));
    let r = v.get("r").and_then(Value::as_u64).ok_or_else(|| bad("missing integer r"))? as u32;
    let coeffs = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("missing coeffs array"))?;
    let strs = coeffs.iter().map(|c| c.as_str().map(str::to_owned).ok_or_else(|| bad("coeffs must be strings"))).collect::<Result<Vec<_>>>()?;
    if strs.len() != CycScalar::one(r).phi() {
        return Err(bad("wrong number of coefficients"));
    }
    CycScalar::parse_coeff_strings(r, &strs)
}

/// k with c = t^k, if c is a power of t.
pub fn t_power(c: &CycScalar) -> Option<i64> {
    let period = 4 * c.r() as i64;
    (0..period).find(|&k| &CycScalar::t_pow(c.r(), k) == c).map(|k| if k > period / 2 { k - period } else { k })
}

pub fn complex(c: &ComplexAP) -> Value {
    let (re, im) = c.to_f64_pair();
    json!({ "re": re, "im": im })
}

pub fn exact_matrix(m: &Mat<CycScalar>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(cyc).collect())).collect())
}

pub fn complex_matrix(m: &CMat) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(complex).collect())).collect())
}

/// {"r", "terms": [{"p", "q", "coeff", "t_power"?}]}; (0,0) is the empty skein.
pub fn skein(s: &ReducedSkein) -> Value {
    let r = s.unit().r();
    let terms: Vec<Value> = s
        .terms()
        .iter()
        .map(|(&(p, q), c)| {
            let mut m = Map::new();
            m.insert("p".into(), p.into());
            m.insert("q".into(), q.into());
            m.insert("coeff".into(), cyc(c));
            if let Some(k) = t_power(c) {
                m.insert("t_power".into(), k.into());
            }
            Value::Object(m)
        })
        .collect();
    json!({ "r": r, "terms": terms })
}

pub fn skein_from(v: &Value) -> Result<ReducedSkein> {
    let bad = |m: &str| Error::InvalidArgument(format!("skein JSON: {m}"));
    let r = v.get("r").and_then(Value::as_u64).ok_or_else(|| bad("missing integer r"))? as u32;
    let unit = CycScalar::one(r);
    let mut s = ReducedSkein::zero(&unit);
    for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
        let p = t.get("p").and_then(Value::as_i64).ok_or_else(|| bad("term without p"))?;
        let q = t.get("q").and_then(Value::as_i64).ok_or_else(|| bad("term without q"))?;
        let c = cyc_from(t.get("coeff").ok_or_else(|| bad("term without coeff"))?)?;
        if (p, q) == (0, 0) {
            s = s.try_add(&ReducedSkein::empty(&unit).scale(&c))?;
        } else {
            s.add_curve(p, q, c);
        }
    }
    Ok(s)
}

pub fn report(r: &VerifyReport) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({ "check_id": f.check_id, "inputs": f.inputs, "expected": f.expected, "actual": f.actual }))
        .collect();
    json!({
        "suite": r.suite,
        "ranges": r.ranges,
        "checks_run": r.checks_run,
        "failures": failures,
        "notes": r.notes,
    })
}

/// Matrix as CSV: header "j\k,0,1,…", then one row per j.
pub fn matrix_csv(cells: &[Vec<String>]) -> Result<Vec<u8>> {
    let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    let cols = cells.first().map_or(0, Vec::len);
    let mut header = vec!["j\\k".to_string()];
    header.extend((0..cols).map(|k| k.to_string()));
    w.write_record(&header).map_err(io)?;
    for (j, row) in cells.iter().enumerate() {
        let mut rec = vec![j.to_string()];
        rec.extend(row.iter().cloned());
        w.write_record(&rec).map_err(io)?;
    }
    w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))
}

/// CSV cells for a JSON matrix of CycScalar objects, {re,im} objects or integers.
pub fn csv_cells(rows: &Value) -> Option<Vec<Vec<String>>> {
    rows.as_array()?
        .iter()
        .map(|row| {
            row.as_array()?
                .iter()
                .map(|v| match v {
                    Value::Object(o) if o.contains_key("coeffs") => cyc_from(v).ok().map(|c| c.to_string()),
                    Value::Object(o) => Some(format!("{}{:+}i", o.get("re")?.as_f64()?, o.get("im")?.as_f64()?)),
                    Value::Number(n) => Some(n.to_string()),
                    Value::String(s) => Some(s.clone()),
                    _ => None,
                })
                .collect()
        })
        .collect()
}

/// Indented key/value rendering for terminals.
pub fn text(v: &Value) -> String {
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = " ".repeat(indent);
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    match x {
                        Value::Object(_) | Value::Array(_) if !is_leafy(x) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            go(x, indent + 2, out);
                        }
                        _ => out.push_str(&format!("{pad}{k}: {}\n", inline(x))),
                    }
                }
            }
            Value::Array(a) => {
                for x in a {
                    if is_leafy(x) {
                        out.push_str(&format!("{pad}- {}\n", inline(x)));
                    } else {
                        out.push_str(&format!("{pad}-\n"));
                        go(x, indent + 2, out);
                    }
                }
            }
            _ => out.push_str(&format!("{pad}{}\n", inline(v))),
        }
    }
    fn is_leafy(v: &Value) -> bool {
        match v {
            Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
            Value::Object(o) => o.contains_key("coeffs") || (o.len() == 2 && o.contains_key("re") && o.contains_key("im")),
            _ => true,
        }
    }
    fn inline(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Object(o) if o.contains_key("coeffs") => cyc_from(v).map(|c| c.to_string()).unwrap_or_else(|_| v.to_string()),
            _ => v.to_string(),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use thetaforge::rt_torus::TorusSkein;

    #[test]
    fn cyc_round_trip() {
        let c = CycScalar::t_pow(5, 3) + CycScalar::from_int(5, -2);
        assert_eq!(cyc_from(&cyc(&c)).unwrap(), c);
        assert!(cyc_from(&json!({"r": 5, "coeffs": ["1/1"]})).is_err());
    }

    #[test]
    fn t_power_detection() {
        assert_eq!(t_power(&CycScalar::t_pow(5, -1)), Some(-1));
        assert_eq!(t_power(&CycScalar::t_pow(5, 7)), Some(7));
        assert_eq!(t_power(&CycScalar::from_int(5, 2)), None);
    }

    #[test]
    fn skein_round_trip() {
        let unit = CycScalar::one(5);
        let s = TorusSkein::curve(&unit, 1, 0).pts_mul(&TorusSkein::curve(&unit, 2, 3)).unwrap();
        let s = s.try_add(&ReducedSkein::empty(&unit).scale(&CycScalar::from_int(5, 3))).unwrap();
        assert_eq!(skein_from(&skein(&s)).unwrap(), s);
    }

    #[test]
    fn csv_layout() {
        let bytes = matrix_csv(&[vec!["a".into(), "b".into()], vec!["c".into(), "d".into()]]).unwrap();
        assert_eq!(String::from_utf8(bytes).unwrap(), "j\\k,0,1\n0,a,b\n1,c,d\n");
    }
}
