//! Brute-force GUE trace moments from Wick pairings.
//!
//! A trace word for `μ` has `|μ|` letters arranged in cycles of lengths
//! `μ_j`, one cycle (vertex) per trace. A perfect matching `α` of the letters
//! glues the vertices into a surface whose faces are the cycles of `γ∘α`,
//! where `γ` rotates each trace cycle. Each face carries a free index and so
//! a factor `N`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rat, LaurentPoly, Poly};
use crate::ensemble::Value;
use crate::error::{Error, Result};
use crate::partitions::Partition;

pub const MAX_WICK_WEIGHT: usize = 12;

/// Propagator convention: `⟨M_ij M_kl⟩ = δ_il δ_jk` for the unscaled weight,
/// or `δ_il δ_jk / (4N)` after rescaling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Unrescaled,
    Rescaled,
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unrescaled" => Ok(Convention::Unrescaled),
            "rescaled" => Ok(Convention::Rescaled),
            other => Err(Error::Parse(format!("unknown convention {other:?}"))),
        }
    }
}

struct Word {
    /// `γ`: next letter in the same trace.
    next: Vec<usize>,
    /// trace (vertex) owning each letter
    vertex: Vec<usize>,
    vertices: usize,
}

impl Word {
    fn new(mu: &Partition) -> Self {
        let mut next = Vec::with_capacity(mu.weight());
        let mut vertex = Vec::with_capacity(mu.weight());
        let mut start = 0;
        for (v, &len) in mu.parts().iter().enumerate() {
            for i in 0..len {
                next.push(start + (i + 1) % len);
                vertex.push(v);
            }
            start += len;
        }
        Word {
            next,
            vertex,
            vertices: mu.len(),
        }
    }

    fn faces(&self, pairing: &[usize]) -> usize {
        let mut seen = vec![false; pairing.len()];
        let mut count = 0;
        for s in 0..pairing.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.next[pairing[x]];
            }
        }
        count
    }

    fn connected(&self, pairing: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (a, &b) in pairing.iter().enumerate() {
            let (ra, rb) = (find(&mut parent, self.vertex[a]), find(&mut parent, self.vertex[b]));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        (0..self.vertices).all(|v| find(&mut parent, v) == root)
    }
}

/// Visits every perfect matching extending `pairing`, pairing the smallest
/// unmatched letter first.
fn each_pairing(pairing: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    const FREE: usize = usize::MAX;
    let Some(first) = pairing.iter().position(|&p| p == FREE) else {
        visit(pairing);
        return;
    };
    for j in first + 1..pairing.len() {
        if pairing[j] != FREE {
            continue;
        }
        pairing[first] = j;
        pairing[j] = first;
        each_pairing(pairing, visit);
        pairing[first] = FREE;
        pairing[j] = FREE;
    }
}

/// Histogram of face counts over all pairings, optionally only connected
/// gluings. Index `f` holds the number of pairings with `f` faces.
pub fn face_histogram(mu: &Partition, connected_only: bool) -> Result<Vec<u64>> {
    let m = mu.weight();
    if m > MAX_WICK_WEIGHT {
        return Err(Error::BoundExceeded {
            what: "Wick oracle weight",
            value: m,
            bound: MAX_WICK_WEIGHT,
        });
    }
    let mut total = vec![0u64; m + 1];
    if m % 2 == 1 {
        return Ok(total);
    }
    if m == 0 {
        total[0] = 1;
        return Ok(total);
    }
    let word = Word::new(mu);
    let expected_parity = (m / 2 + mu.len()) % 2;
    let partial: Vec<Vec<u64>> = (1..m)
        .into_par_iter()
        .map(|j| {
            let mut hist = vec![0u64; m + 1];
            let mut pairing = vec![usize::MAX; m];
            pairing[0] = j;
            pairing[j] = 0;
            each_pairing(&mut pairing, &mut |p| {
                if connected_only && !word.connected(p) {
                    return;
                }
                let f = word.faces(p);
                assert_eq!(f % 2, expected_parity, "Euler parity violated for {mu}");
                hist[f] += 1;
            });
            hist
        })
        .collect();
    for h in partial {
        for (t, c) in total.iter_mut().zip(h) {
            *t += c;
        }
    }
    Ok(total)
}

fn histogram_poly(hist: &[u64]) -> Poly {
    Poly::from_coeffs(hist.iter().map(|&c| rat(c as i64)).collect())
}

/// `(4N)^{-|μ|/2}` applied to a polynomial in `N`.
fn rescale(poly: &Poly, weight: usize) -> LaurentPoly {
    let half = weight / 2;
    LaurentPoly::from(poly)
        .scale(&rat(4).pow(-(half as i32)))
        .shift(-(half as i64))
}

/// `E[∏ Tr M^{μ_j}]` as a sum over Wick pairings.
pub fn wick_trace_moment(mu: &Partition, convention: Convention) -> Result<Value> {
    let poly = histogram_poly(&face_histogram(mu, false)?);
    Ok(match convention {
        Convention::Unrescaled => Value::Poly(poly),
        Convention::Rescaled => Value::Laurent(rescale(&poly, mu.weight())),
    })
}

/// Sum over the gluings that connect every trace, in the rescaled convention.
pub fn wick_connected(mu: &Partition) -> Result<LaurentPoly> {
    if mu.is_empty() {
        return Err(Error::InvalidParameter("connected part needs at least one trace".into()));
    }
    let poly = histogram_poly(&face_histogram(mu, true)?);
    Ok(rescale(&poly, mu.weight()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::moments::gue_trace_poly;
    use crate::partitions::partitions_of;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn unrescaled(mu: &str) -> Poly {
        wick_trace_moment(&p(mu), Convention::Unrescaled)
            .unwrap()
            .as_poly()
            .unwrap()
            .clone()
    }

    #[test]
    fn small_words() {
        assert_eq!(unrescaled("2"), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(unrescaled("4"), Poly::from_ints(&[0, 1, 0, 2]));
        assert_eq!(unrescaled("6"), Poly::from_ints(&[0, 0, 10, 0, 5]));
        assert_eq!(unrescaled("3"), Poly::zero());
        let counts: u64 = face_histogram(&p("4,4,4"), false).unwrap().iter().sum();
        assert_eq!(counts, 10395);
        assert!(face_histogram(&p("8,6"), false).is_err());
    }

    #[test]
    fn connected_examples() {
        assert_eq!(wick_connected(&p("2,2")).unwrap(), LaurentPoly::constant(ratio(1, 8)));
        assert_eq!(wick_connected(&p("2")).unwrap(), LaurentPoly::monomial(ratio(1, 4), 1));
        assert_eq!(wick_connected(&p("1,1")).unwrap(), LaurentPoly::constant(ratio(1, 4)));
    }

    #[test]
    fn agrees_with_character_sums() {
        for w in (0..=8).step_by(2) {
            for mu in partitions_of(w).unwrap() {
                assert_eq!(
                    wick_trace_moment(&mu, Convention::Unrescaled).unwrap(),
                    Value::Poly(gue_trace_poly(&mu).unwrap()),
                    "μ={mu}"
                );
            }
        }
        for mu in ["10", "5,3,2", "4,4,2", "12", "3,3,3,3", "2,2,2,2,2,2"] {
            assert_eq!(unrescaled(mu), gue_trace_poly(&p(mu)).unwrap(), "μ={mu}");
        }
    }
}
