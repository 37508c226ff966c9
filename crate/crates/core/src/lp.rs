//! The triangle-density linear program: export, feasible points from vertex
//! sets, and level-set rounding of (externally solved) fractional solutions.
//!
//! ```text
//! max   Σ x_ijk
//! s.t.  x_ijk <= y_i, x_ijk <= y_j, x_ijk <= y_k   for every triangle ijk
//!       Σ y_i <= 1
//!       x, y >= 0
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::clique::CliqueIndex;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::scalar::Rational;

/// Feasibility slack accepted on solutions read from an external solver.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-9;

/// A point of the LP: one `y` per vertex, one `x` per triangle (in index
/// order).
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub y: Vec<Rational>,
    pub x: Vec<Rational>,
    pub objective: Rational,
}

fn require_triangles(index: &CliqueIndex) -> Result<()> {
    if index.k() != 3 {
        return Err(Error::Parameter(format!(
            "the LP is defined over triangles, index has k={}",
            index.k()
        )));
    }
    Ok(())
}

fn x_name(tuple: &[usize]) -> String {
    format!("x_{}_{}_{}", tuple[0], tuple[1], tuple[2])
}

fn y_name(v: usize) -> String {
    format!("y_{v}")
}

/// Writes the LP in lp_solve's text format. Variables are named by internal
/// vertex id: `y_<i>` and `x_<i>_<j>_<k>` with `i < j < k`.
pub fn export_lp(index: &CliqueIndex) -> Result<String> {
    require_triangles(index)?;
    let mut out = String::new();
    let terms: Vec<String> = index.iter().map(x_name).collect();
    if terms.is_empty() {
        out.push_str("max: 0;\n");
    } else {
        let _ = writeln!(out, "max: {};", terms.join(" + "));
    }
    for tuple in index.iter() {
        let x = x_name(tuple);
        for &v in tuple {
            let _ = writeln!(out, "{x} - {} <= 0;", y_name(v));
        }
    }
    let ys: Vec<String> = (0..index.n()).map(y_name).collect();
    if ys.is_empty() {
        out.push_str("0 <= 1;\n");
    } else {
        let _ = writeln!(out, "{} <= 1;", ys.join(" + "));
    }
    for x in &terms {
        let _ = writeln!(out, "{x} >= 0;");
    }
    for y in &ys {
        let _ = writeln!(out, "{y} >= 0;");
    }
    Ok(out)
}

/// The indicator point of a nonempty set: `y_i = 1/|S|` on `S`, and
/// `x = 1/|S|` on triangles inside `S`. Its objective is `t(S)/|S|`.
pub fn feasible_from_set(index: &CliqueIndex, set: &VertexSet) -> Result<LpSolution> {
    require_triangles(index)?;
    set.check(index.n())?;
    if set.is_empty() {
        return Err(Error::Parameter("feasible point needs a nonempty set".into()));
    }
    let share = Rational::new(BigInt::from(1), BigInt::from(set.len()));
    let mask = set.mask(index.n());
    let y = mask
        .iter()
        .map(|&inside| if inside { share.clone() } else { Rational::zero() })
        .collect();
    let x: Vec<Rational> = index
        .iter()
        .map(|tuple| {
            if tuple.iter().all(|&v| mask[v]) {
                share.clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let objective = x.iter().sum();
    Ok(LpSolution { y, x, objective })
}

/// Reads `name value` lines (blank lines and `#` comments skipped). Missing
/// variables are zero; unknown names are an error. Values are converted to
/// exact rationals from their `f64` representation.
pub fn parse_solution(index: &CliqueIndex, text: &str) -> Result<LpSolution> {
    require_triangles(index)?;
    let mut slots: HashMap<String, (bool, usize)> = HashMap::new();
    for v in 0..index.n() {
        slots.insert(y_name(v), (false, v));
    }
    for (c, tuple) in index.iter().enumerate() {
        slots.insert(x_name(tuple), (true, c));
    }
    let mut y = vec![Rational::zero(); index.n()];
    let mut x = vec![Rational::zero(); index.len()];
    for (number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_error = |message: String| Error::Parse {
            line: number + 1,
            message,
        };
        let mut tokens = line.split_whitespace();
        let (Some(name), Some(value), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(parse_error("expected `name value`".into()));
        };
        let value: f64 = value
            .parse()
            .map_err(|_| parse_error(format!("bad number {value:?}")))?;
        let value = Rational::from_float(value)
            .ok_or_else(|| parse_error(format!("non-finite value for {name}")))?;
        match slots.get(name) {
            Some(&(true, c)) => x[c] = value,
            Some(&(false, v)) => y[v] = value,
            None => return Err(parse_error(format!("unknown variable {name:?}"))),
        }
    }
    let objective = x.iter().sum();
    Ok(LpSolution { y, x, objective })
}

impl LpSolution {
    /// Checks the LP constraints up to `tolerance`.
    pub fn check_feasible(&self, index: &CliqueIndex, tolerance: f64) -> Result<()> {
        let slack = Rational::from_float(tolerance).unwrap_or_else(Rational::zero);
        let negative = |value: &Rational| value.is_negative() && -value > slack;
        if self.y.len() != index.n() || self.x.len() != index.len() {
            return Err(Error::Parameter("solution does not match the index".into()));
        }
        if self.y.iter().chain(&self.x).any(negative) {
            return Err(Error::Parameter("negative variable".into()));
        }
        let budget: Rational = self.y.iter().sum();
        if budget > Rational::from_integer(BigInt::from(1)) + &slack {
            return Err(Error::Parameter(format!("sum of y is {budget}, above 1")));
        }
        for (c, tuple) in index.iter().enumerate() {
            for &v in tuple {
                if self.x[c] > &self.y[v] + &slack {
                    return Err(Error::Parameter(format!(
                        "{} exceeds {}",
                        x_name(tuple),
                        y_name(v)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `name value` lines in the format [`parse_solution`] reads.
    pub fn to_text(&self, index: &CliqueIndex) -> String {
        let mut out = String::new();
        for (v, value) in self.y.iter().enumerate() {
            let _ = writeln!(out, "{} {}", y_name(v), crate::scalar::to_f64(value));
        }
        for (tuple, value) in index.iter().zip(&self.x) {
            let _ = writeln!(out, "{} {}", x_name(tuple), crate::scalar::to_f64(value));
        }
        out
    }
}

/// Scans the level sets `S(r) = {i : y_i >= r}` for every distinct positive
/// `y` value, largest `r` first, and returns the one with the highest exact
/// triangle density (ties to the smaller set). All-zero `y` gives `(∅, 0)`.
pub fn round_solution(index: &CliqueIndex, solution: &LpSolution) -> Result<(VertexSet, Rational)> {
    require_triangles(index)?;
    if solution.y.len() != index.n() {
        return Err(Error::Parameter("solution does not match the index".into()));
    }
    let mut order: Vec<usize> = (0..index.n())
        .filter(|&v| solution.y[v].is_positive())
        .collect();
    order.sort_by(|&a, &b| solution.y[b].cmp(&solution.y[a]).then(a.cmp(&b)));

    let mut inside = vec![false; index.n()];
    let mut members_in = vec![0usize; index.len()];
    let mut complete = 0u64;
    let mut best: Option<(usize, u64)> = None;
    let mut position = 0;
    while position < order.len() {
        let level = &solution.y[order[position]];
        while position < order.len() && &solution.y[order[position]] == level {
            let v = order[position];
            inside[v] = true;
            for &c in index.memberships(v) {
                members_in[c] += 1;
                if members_in[c] == index.k() {
                    complete += 1;
                }
            }
            position += 1;
        }
        let better = match best {
            None => true,
            Some((size, count)) => (complete as u128) * (size as u128) > (count as u128) * (position as u128),
        };
        if better {
            best = Some((position, complete));
        }
    }
    match best {
        None => Ok((VertexSet::empty(), Rational::zero())),
        Some((size, count)) => {
            let mut ids = order[..size].to_vec();
            ids.sort_unstable();
            let set = VertexSet::new(ids, index.n())?;
            Ok((set, Rational::new(BigInt::from(count), BigInt::from(size))))
        }
    }
}
