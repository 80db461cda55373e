//! Parameter grammar for cyclotomic specializations, mirroring the GAP
//! Hecke constructor: each slot takes zeta * x^n, where an explicit root of
//! unity has to agree with the canonical pattern E(e)^j of its orbit and a
//! bare power of x leaves the pattern implied. A single value replicates
//! across orbits as the partly specialized list [q, E(e), ..., E(e)^{e-1}].

use hecke_core::grouprepo::GroupData;
use hecke_core::monlattice::ExpVec;
use hecke_core::numfield::CycNum;

pub enum ParamError {
    Shape(String),
    NonCyclotomic(String),
}

impl std::fmt::Display for ParamError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamError::Shape(m) => write!(f, "bad parameter shape: {m}"),
            ParamError::NonCyclotomic(m) => {
                write!(f, "parameter '{m}' is not a root of unity times a power of x")
            }
        }
    }
}

/// Raw exponent vector "0,1,2"; the length must fit the pack layout.
pub fn parse_n(g: &GroupData, text: &str) -> Result<ExpVec, ParamError> {
    let n: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| ParamError::Shape(format!("'{text}' is not a list of integers")))?;
    if n.len() != g.n_slots() {
        return Err(ParamError::Shape(format!(
            "{} exponents for {} parameter slots",
            n.len(),
            g.n_slots()
        )));
    }
    Ok(n)
}

pub fn parse_params(g: &GroupData, text: &str) -> Result<ExpVec, ParamError> {
    let entries: Vec<&str> = text.split(',').map(str::trim).collect();
    let slots = g.n_slots();
    if entries.len() == 1 && slots > 1 {
        let (zeta, n) = parse_entry(entries[0])?;
        if let Some(z) = zeta {
            if !z.is_one() {
                return Err(ParamError::Shape(format!(
                    "the replicated value '{}' must carry no root of unity",
                    entries[0]
                )));
            }
        }
        let mut out = Vec::with_capacity(slots);
        for o in &g.orbits {
            out.push(n);
            out.extend(std::iter::repeat(0).take(o.e - 1));
        }
        return Ok(out);
    }
    if entries.len() != slots {
        return Err(ParamError::Shape(format!("{} parameters for {slots} slots", entries.len())));
    }
    let mut out = Vec::with_capacity(slots);
    let mut it = entries.iter();
    for o in &g.orbits {
        for j in 0..o.e {
            let entry = it.next().unwrap();
            let (zeta, n) = parse_entry(entry)?;
            if let Some(z) = zeta {
                if z != CycNum::root_of_unity(o.e as u32, j as i64) {
                    return Err(ParamError::Shape(format!(
                        "parameter '{entry}' sits in slot {}_{j}, whose root of unity is E({})^{j}",
                        o.letter, o.e
                    )));
                }
            }
            out.push(n);
        }
    }
    Ok(out)
}

// zeta * x^n decomposition; None means no explicit root of unity was written
fn parse_entry(s: &str) -> Result<(Option<CycNum>, i64), ParamError> {
    let bad = || ParamError::NonCyclotomic(s.to_string());
    let mut rest = s;
    let mut zeta: Option<CycNum> = None;
    let mul = |z: CycNum, zeta: &mut Option<CycNum>| -> Result<(), ParamError> {
        let cur = zeta.take().unwrap_or_else(CycNum::one);
        *zeta = Some(cur.try_mul(&z).map_err(|_| ParamError::NonCyclotomic(s.to_string()))?);
        Ok(())
    };
    if let Some(r) = rest.strip_prefix('-') {
        mul(CycNum::root_of_unity(2, 1), &mut zeta)?;
        rest = r;
    }
    if rest.is_empty() {
        return Err(bad());
    }
    let mut n = 0i64;
    for term in rest.split('*') {
        let term = term.trim();
        if let Some(t) = term.strip_prefix('E').or_else(|| term.strip_prefix('e')) {
            let (d_part, j_part) = match t.split_once('^') {
                Some((d, j)) => (d, Some(j)),
                None => (t, None),
            };
            let d_part = d_part.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(d_part);
            let d: u32 = d_part.parse().map_err(|_| bad())?;
            let j: i64 = match j_part {
                Some(j) => j.parse().map_err(|_| bad())?,
                None => 1,
            };
            if d == 0 {
                return Err(bad());
            }
            mul(CycNum::root_of_unity(d, j), &mut zeta)?;
        } else if let Some(t) = term.strip_prefix('x') {
            let k: i64 = match t.strip_prefix('^') {
                Some(k) => k.parse().map_err(|_| bad())?,
                None if t.is_empty() => 1,
                None => return Err(bad()),
            };
            n += k;
        } else if term == "1" {
            // bare constant, pattern stays implied
        } else if term == "-1" {
            mul(CycNum::root_of_unity(2, 1), &mut zeta)?;
        } else {
            return Err(bad());
        }
    }
    Ok((zeta, n))
}
