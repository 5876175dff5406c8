//! JSON encodings shared with the command-line front end.
//!
//! Rationals are strings `"p/q"`; a scalar is `["re", "im"]`; a Laurent
//! polynomial is a list of `[exp, "re", "im"]`; a matrix is
//! `{"n": n, "entries": [[poly, …], …]}` row-major.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::arith::{format_rational, parse_rational, GaussianRational, LaurentMatrix, LaurentPoly};
use crate::beta::ScaledLoop;
use crate::error::{Error, Result};
use crate::ktheory::FreeModule;
use crate::lattice::window::{slot, slot_exp, slots};
use crate::lattice::{HomomorphismData, Lattice, ProjectivePoint, ThomPoint};
use crate::loops::{check_poly_loop, ConstantUnitary, GroupTag, UnitaryLoop};
use crate::strata::{FiberVector, StratumData};

pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn bad(what: &str, v: &Value) -> Error {
    let mut s = v.to_string();
    if s.len() > 80 {
        s.truncate(77);
        s.push_str("...");
    }
    Error::Parse(format!("expected {what}, got {s}"))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn uint(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(what, v))
}

pub fn rational_to_json(q: &BigRational) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(bad("a rational string \"p/q\"", v)),
    }
}

impl Json for BigRational {
    fn to_json(&self) -> Value {
        rational_to_json(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        rational_from_json(v)
    }
}

impl Json for GaussianRational {
    fn to_json(&self) -> Value {
        json!([format_rational(self.re()), format_rational(self.im())])
    }

    fn from_json(v: &Value) -> Result<Self> {
        match array(v, "a scalar [re, im]")?.as_slice() {
            [re, im] => Ok(GaussianRational::new(rational_from_json(re)?, rational_from_json(im)?)),
            _ => Err(bad("a scalar [re, im]", v)),
        }
    }
}

impl<T: Json> Json for Vec<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(Json::to_json).collect())
    }

    fn from_json(v: &Value) -> Result<Self> {
        array(v, "a list")?.iter().map(T::from_json).collect()
    }
}

impl Json for LaurentPoly {
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(e, c)| json!([e, format_rational(c.re()), format_rational(c.im())]))
                .collect(),
        )
    }

    fn from_json(v: &Value) -> Result<Self> {
        let mut p = LaurentPoly::zero();
        for t in array(v, "a polynomial term list")? {
            match array(t, "a term [exp, re, im]")?.as_slice() {
                [e, re, im] => {
                    let e = e.as_i64().ok_or_else(|| bad("an integer exponent", e))?;
                    p.add_term(e, &GaussianRational::new(rational_from_json(re)?, rational_from_json(im)?));
                }
                _ => return Err(bad("a term [exp, re, im]", t)),
            }
        }
        Ok(p)
    }
}

impl Json for LaurentMatrix {
    fn to_json(&self) -> Value {
        let n = self.n();
        let rows: Vec<Value> = (0..n).map(|i| Value::Array((0..n).map(|j| self.get(i, j).to_json()).collect())).collect();
        json!({"n": n, "entries": rows})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = uint(field(v, "n")?, "a dimension")?;
        let rows = array(field(v, "entries")?, "matrix rows")?;
        if rows.len() != n {
            return Err(Error::DimensionMismatch(format!("declared n = {n}, got {} rows", rows.len())));
        }
        let rows = rows
            .iter()
            .map(|r| array(r, "a matrix row")?.iter().map(LaurentPoly::from_json).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        LaurentMatrix::from_rows(rows)
    }
}

/// A loop payload is a matrix with optional `"r"` (default: minimal) and
/// `"group"` (`"SU2"` or `"U2"`, default `"SU2"`).
impl Json for UnitaryLoop {
    fn to_json(&self) -> Value {
        let mut v = self.matrix().to_json();
        v["r"] = json!(self.degree_bound());
        v["group"] = json!(match self.tag() {
            GroupTag::SU2 => "SU2",
            GroupTag::U2 => "U2",
        });
        v
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = LaurentMatrix::from_json(v)?;
        let tag = match v.get("group").and_then(Value::as_str) {
            None | Some("SU2") => GroupTag::SU2,
            Some("U2") => GroupTag::U2,
            Some(other) => return Err(Error::Parse(format!("unknown group {other:?}"))),
        };
        let r = match v.get("r") {
            Some(r) => uint(r, "a degree bound")?,
            None => m.support().map_or(0, |(lo, hi)| lo.unsigned_abs().max(hi.unsigned_abs()) as usize),
        };
        check_poly_loop(&m, r, tag)
    }
}

/// A constant matrix in the polynomial matrix format.
impl Json for ConstantUnitary {
    fn to_json(&self) -> Value {
        LaurentMatrix::from_scalar(self.matrix()).to_json()
    }

    fn from_json(v: &Value) -> Result<Self> {
        let m = LaurentMatrix::from_json(v)?;
        if m.support().is_some_and(|(lo, hi)| lo != 0 || hi != 0) {
            return Err(Error::Parse("group elements must have constant entries".into()));
        }
        ConstantUnitary::new(m.eval(&GaussianRational::one()).expect("constant"))
    }
}

impl Json for ProjectivePoint {
    fn to_json(&self) -> Value {
        self.coords().to_vec().to_json()
    }

    fn from_json(v: &Value) -> Result<Self> {
        ProjectivePoint::new(Vec::<GaussianRational>::from_json(v)?)
    }
}

fn parse_slot(s: &str, r: usize) -> Result<usize> {
    let bad = || Error::Parse(format!("not a slot \"(exp, comp)\": {s:?}"));
    let inner = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
    let (e, c) = inner.split_once(',').ok_or_else(bad)?;
    let e: i64 = e.trim().parse().map_err(|_| bad())?;
    let c: usize = c.trim().parse().map_err(|_| bad())?;
    if c > 1 {
        return Err(bad());
    }
    if e < -(r as i64) || e >= r as i64 {
        return Err(Error::OutsideWindow { r, exp: e });
    }
    Ok(slot(r, e, c))
}

/// `{"r": r, "basis": [[["(exp, comp)", "re", "im"], …], …]}`, zeros omitted.
impl Json for Lattice {
    fn to_json(&self) -> Value {
        let r = self.r();
        let basis: Vec<Value> = self
            .basis_rows()
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(s, c)| {
                            json!([format!("({}, {})", slot_exp(r, s), s % 2), format_rational(c.re()), format_rational(c.im())])
                        })
                        .collect(),
                )
            })
            .collect();
        json!({"r": r, "basis": basis})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let r = uint(field(v, "r")?, "a window radius")?;
        let mut rows = Vec::new();
        for b in array(field(v, "basis")?, "a basis list")? {
            let mut row = vec![GaussianRational::zero(); slots(r)];
            for entry in array(b, "a basis row")? {
                match array(entry, "a slot entry")?.as_slice() {
                    [s, re, im] => {
                        let s = s.as_str().ok_or_else(|| bad("a slot string", s))?;
                        row[parse_slot(s, r)?] = GaussianRational::new(rational_from_json(re)?, rational_from_json(im)?);
                    }
                    _ => return Err(bad("a slot entry [\"(exp, comp)\", re, im]", entry)),
                }
            }
            rows.push(row);
        }
        Lattice::from_rows(r, rows)
    }
}

/// `{"r": 0}` for the trivial homomorphism, else `{"r": r, "u": …, "v": …}`.
impl Json for HomomorphismData {
    fn to_json(&self) -> Value {
        match (self.u(), self.v()) {
            (Some(u), Some(v)) => json!({"r": self.r(), "u": u.to_vec().to_json(), "v": v.to_vec().to_json()}),
            _ => json!({"r": 0}),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let r = uint(field(v, "r")?, "a homomorphism degree")?;
        if r == 0 {
            return Ok(HomomorphismData::trivial());
        }
        if let Some(line) = v.get("line") {
            return Ok(HomomorphismData::from_line(r, &ProjectivePoint::from_json(line)?));
        }
        HomomorphismData::from_vectors(r, Vec::from_json(field(v, "u")?)?, Vec::from_json(field(v, "v")?)?)
    }
}

/// `{"basepoint": true}` or `{"u0": scalar pair, "fiber": [scalar pair, …]}`.
impl Json for ThomPoint {
    fn to_json(&self) -> Value {
        match self {
            ThomPoint::Basepoint => json!({"basepoint": true}),
            ThomPoint::Point { u0, fiber } => json!({
                "u0": u0.to_json(),
                "fiber": Value::Array(fiber.iter().map(Json::to_json).collect()),
            }),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.get("basepoint").and_then(Value::as_bool) == Some(true) {
            return Ok(ThomPoint::Basepoint);
        }
        let u0 = Vec::from_json(field(v, "u0")?)?;
        let fiber = array(field(v, "fiber")?, "fiber vectors")?.iter().map(Vec::from_json).collect::<Result<_>>()?;
        ThomPoint::point(u0, fiber)
    }
}

impl Json for ScaledLoop {
    fn to_json(&self) -> Value {
        json!({"nb": self.nb.to_json(), "norms_sq": [rational_to_json(&self.norms_sq[0]), rational_to_json(&self.norms_sq[1])]})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let nb = LaurentMatrix::from_json(field(v, "nb")?)?;
        let norms: Vec<BigRational> = Vec::from_json(field(v, "norms_sq")?)?;
        let [a, b]: [BigRational; 2] = norms.try_into().map_err(|_| bad("two squared norms", v))?;
        Ok(ScaledLoop { nb, norms_sq: [a, b] })
    }
}

/// `{"lambda": …, "abcd": [a, b, c, d], "fiber": […]}` with each of `a, b, c,
/// d, fiber` a list of scalars in ascending order. Without `"fiber"` the zero
/// fiber is used.
pub fn stratum_to_json(s: &StratumData, x: &FiberVector) -> Value {
    let abcd: Vec<Value> = s.abcd().iter().map(|p| p.to_vec().to_json()).collect();
    json!({"lambda": s.lambda().to_json(), "abcd": abcd, "fiber": x.0.to_json()})
}

pub fn stratum_from_json(v: &Value) -> Result<(StratumData, FiberVector)> {
    let lambda = HomomorphismData::from_json(field(v, "lambda")?)?;
    let abcd = array(field(v, "abcd")?, "four coefficient lists")?;
    let [a, b, c, d]: [Vec<GaussianRational>; 4] = abcd
        .iter()
        .map(Vec::from_json)
        .collect::<Result<Vec<_>>>()?
        .try_into()
        .map_err(|_| bad("four coefficient lists", v))?;
    let r = lambda.r();
    let s = StratumData::new(lambda, a, b, c, d)?;
    let x = match v.get("fiber") {
        Some(f) => FiberVector(Vec::from_json(f)?),
        None => FiberVector::zero(r),
    };
    Ok((s, x))
}

pub fn module_to_json(m: &FreeModule) -> Value {
    json!({"ring": m.ring.to_string(), "even_rank": m.even_rank(), "odd_rank": m.odd_rank, "labels": m.labels})
}

pub fn module_from_json(v: &Value) -> Result<FreeModule> {
    let ring = field(v, "ring")?.as_str().ok_or_else(|| bad("a ring tag", v))?.parse()?;
    let labels: Vec<String> = array(field(v, "labels")?, "labels")?
        .iter()
        .map(|l| l.as_str().map(str::to_owned).ok_or_else(|| bad("a label", l)))
        .collect::<Result<_>>()?;
    let odd_rank = uint(field(v, "odd_rank")?, "a rank")?;
    if let Some(e) = v.get("even_rank") {
        if uint(e, "a rank")? != labels.len() {
            return Err(Error::Parse("even_rank does not match the label count".into()));
        }
    }
    Ok(FreeModule { ring, labels, odd_rank })
}
