use num_integer::Integer;

use super::degeneracy::root_of_unity_orders;
use super::minimize::{is_minimal, minimal_recurrence};
use super::Lrs;
use crate::error::{Error, Result};

/// One residue class of a merge decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    /// Minimal recurrence of `j ↦ u_{jM+i}`; non-degenerate by construction.
    Sequence(Lrs),
    /// `u_{jM+i} = 0` for every `j`.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub residue: u64,
    pub kind: ComponentKind,
}

/// `u` split into the `M` subsequences `(u_{jM+i})_j`, `0 ≤ i < M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub modulus: u64,
    pub components: Vec<Component>,
}

impl Decomposition {
    pub fn component(&self, n: u64) -> &Component {
        &self.components[(n % self.modulus) as usize]
    }

    /// Residue classes on which the sequence vanishes identically.
    pub fn zero_progressions(&self) -> Vec<(u64, u64)> {
        self.components
            .iter()
            .filter(|c| matches!(c.kind, ComponentKind::Zero))
            .map(|c| (c.residue, self.modulus))
            .collect()
    }
}

/// Merge decomposition of a minimized recurrence into non-degenerate or
/// identically zero components.
///
/// `M` is the lcm of the orders of all roots of unity among quotients of
/// distinct characteristic roots (so `M = 1` for non-degenerate input). Each
/// component's recurrence is recovered from exact terms with
/// Berlekamp–Massey and checked against twice as many terms.
pub fn decompose(lrs: &Lrs) -> Result<Decomposition> {
    if lrs.is_zero_sequence() {
        return Ok(Decomposition {
            modulus: 1,
            components: vec![Component {
                residue: 0,
                kind: ComponentKind::Zero,
            }],
        });
    }
    if !is_minimal(lrs)? {
        return Err(Error::Contract(
            "decompose expects a minimized recurrence".into(),
        ));
    }
    let modulus = root_of_unity_orders(&lrs.characteristic_poly())
        .into_iter()
        .fold(1u64, |acc, m| acc.lcm(&m));
    if modulus == 1 {
        return Ok(Decomposition {
            modulus,
            components: vec![Component {
                residue: 0,
                kind: ComponentKind::Sequence(lrs.clone()),
            }],
        });
    }

    let k = lrs.order();
    let needed = 4 * k;
    let all = lrs.terms(needed * modulus as usize);
    let mut components = Vec::with_capacity(modulus as usize);
    for i in 0..modulus as usize {
        let sub: Vec<_> = (0..needed)
            .map(|j| all[j * modulus as usize + i].clone())
            .collect();
        let kind = match minimal_recurrence(&sub[..2 * k])? {
            None if sub.iter().all(num_traits::Zero::is_zero) => ComponentKind::Zero,
            Some(rec) if rec.terms(needed) == sub => ComponentKind::Sequence(rec),
            _ => {
                return Err(Error::Contract(format!(
                    "subsequence {i} mod {modulus} did not stabilise"
                )))
            }
        };
        components.push(Component {
            residue: i as u64,
            kind,
        });
    }
    Ok(Decomposition {
        modulus,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrs::{is_degenerate, Degeneracy, DEFAULT_EXACT_CAP};
    use num_bigint::BigInt;

    #[test]
    fn rotation_splits_into_even_and_zero() {
        let l = Lrs::from_i64(&[0, -1], &[1, 0]).unwrap();
        let d = decompose(&l).unwrap();
        assert_eq!(d.modulus, 2);
        assert_eq!(
            d.components[0].kind,
            ComponentKind::Sequence(Lrs::from_i64(&[-1], &[1]).unwrap())
        );
        assert_eq!(d.components[1].kind, ComponentKind::Zero);
        assert_eq!(d.zero_progressions(), vec![(1, 2)]);
    }

    #[test]
    fn non_degenerate_is_its_own_component() {
        let fib = Lrs::from_i64(&[1, 1], &[0, 1]).unwrap();
        let d = decompose(&fib).unwrap();
        assert_eq!(d.modulus, 1);
        assert_eq!(d.components[0].kind, ComponentKind::Sequence(fib));
    }

    #[test]
    fn zero_sequence_is_one_zero_progression() {
        let d = decompose(&Lrs::zero_sequence()).unwrap();
        assert_eq!(d.zero_progressions(), vec![(0, 1)]);
    }

    #[test]
    fn mixed_orders_round_trip() {
        // Ψ = (x⁴ − 1)(x − 3): quotients of order 2 and 4, so M = 4
        let l = Lrs::from_i64(&[3, 0, 0, 1, -3], &[1, 0, 2, 5, -1]).unwrap();
        assert!(is_minimal(&l).unwrap());
        let d = decompose(&l).unwrap();
        assert_eq!(d.modulus, 4);
        for c in &d.components {
            if let ComponentKind::Sequence(rec) = &c.kind {
                assert_eq!(is_degenerate(rec).unwrap(), Degeneracy::NonDegenerate);
            }
            for j in 0..200u64 {
                let n = j * d.modulus + c.residue;
                let expected = l.term_exact(n, DEFAULT_EXACT_CAP).unwrap();
                let got = match &c.kind {
                    ComponentKind::Sequence(rec) => rec.term_exact(j, DEFAULT_EXACT_CAP).unwrap(),
                    ComponentKind::Zero => BigInt::from(0),
                };
                assert_eq!(got, expected, "n = {n}");
            }
        }
    }

    #[test]
    fn non_minimal_is_rejected() {
        let padded = Lrs::from_i64(&[3, -1, -2], &[0, 1, 1]).unwrap();
        assert!(matches!(decompose(&padded), Err(Error::Contract(_))));
    }
}
