use super::circles::{bipartition_circles, f_select, CircleBipartition};
use super::{Coloring, ColoringError, Method};
use crate::distgraph::GraphSpec;
use crate::numtheory::{check_t1_condition, PrimeModulus};

/// The prime used for G(n, 3, 2): `n - 2` if it qualifies, else `n - 1`.
pub fn theorem1_prime(n: usize) -> Option<u64> {
    let qualifies =
        |p: usize| p > 3 && check_t1_condition(p as u64).is_ok_and(|rep| rep.condition_holds);
    [n.checked_sub(2), n.checked_sub(1)]
        .into_iter()
        .flatten()
        .find(|&p| qualifies(p))
        .map(|p| p as u64)
}

/// `p`-coloring of G(n, 3, 2) for `n = p + 2` or `n = p + 1`.
///
/// On the ground set `{0, ..., p + 1}` the two special elements are `p`
/// and `p + 1`; a triple `x` gets
///
/// | contains      | color                         |
/// |---------------|-------------------------------|
/// | neither       | `x1 + x2 + x3`                |
/// | both          | `3 x1`                        |
/// | `p` only      | `x1 + x2 + f_1(x1, x2)`       |
/// | `p + 1` only  | `x1 + x2 + f_2(x1, x2)`       |
///
/// all modulo `p`. For `n = p + 1` the element `p + 1` is simply absent.
pub fn color_theorem1(n: usize) -> Result<Coloring, ColoringError> {
    let p = theorem1_prime(n).ok_or(ColoringError::UnsupportedN(n))?;
    let spec = GraphSpec::new(n, 3, 2)?;
    let bip = bipartition_circles(PrimeModulus::new(p)?)?;
    let label = |v: &[usize]| triple_color(&bip, p, v);
    Coloring::from_fn(spec, Method::Theorem1, p, label)
}

fn triple_color(bip: &CircleBipartition, p: u64, v: &[usize]) -> u64 {
    let (low, high) = (p as usize, p as usize + 1);
    let inner: Vec<u64> = v.iter().filter(|&&x| x < low).map(|&x| x as u64).collect();
    let has_low = v.contains(&low);
    let has_high = v.contains(&high);
    match (has_low, has_high) {
        (false, false) => inner.iter().sum::<u64>() % p,
        (true, true) => 3 * inner[0] % p,
        (true, false) | (false, true) => {
            let index = if has_low { 1 } else { 2 };
            let f = f_select(bip, index, inner[0], inner[1]).expect("distinct residues");
            (inner[0] + inner[1] + f) % p
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{verify_proper, Verdict};
    use crate::distgraph::RSubset;

    #[test]
    fn prime_choice() {
        assert_eq!(theorem1_prime(9), Some(7));
        assert_eq!(theorem1_prime(8), Some(7));
        assert_eq!(theorem1_prime(7), None);
        assert_eq!(theorem1_prime(25), Some(23));
        assert_eq!(theorem1_prime(3), None);
    }

    #[test]
    fn nine_and_eight() {
        for (n, colors) in [(9usize, 7u64), (8, 7)] {
            let c = color_theorem1(n).unwrap();
            assert_eq!(c.palette_bound, colors);
            assert!(c.colors_used() as u64 <= colors);
            assert_eq!(
                verify_proper(&c.spec, &c).unwrap(),
                Verdict::Proper,
                "n = {n}"
            );
        }
        assert_eq!(color_theorem1(7), Err(ColoringError::UnsupportedN(7)));
    }

    #[test]
    fn one_edge_per_case_class() {
        // n = 9, p = 7: special elements 7 (W1 side) and 8 (W2 side)
        let c = color_theorem1(9).unwrap();
        let s = |xs: &[usize]| RSubset::new(xs.to_vec()).unwrap();
        let pairs = [
            (s(&[0, 1, 2]), s(&[0, 1, 3])), // V0 - V0
            (s(&[1, 7, 8]), s(&[2, 7, 8])), // V2 - V2
            (s(&[2, 4, 7]), s(&[2, 7, 8])), // W1 - V2
            (s(&[2, 4, 8]), s(&[2, 7, 8])), // W2 - V2
            (s(&[2, 4, 7]), s(&[2, 4, 5])), // W1 - V0
            (s(&[2, 4, 8]), s(&[2, 4, 5])), // W2 - V0
            (s(&[2, 4, 7]), s(&[2, 4, 8])), // W1 - W2
            (s(&[2, 4, 7]), s(&[2, 5, 7])), // W1 - W1
            (s(&[2, 4, 8]), s(&[2, 5, 8])), // W2 - W2
        ];
        for (u, v) in pairs {
            assert!(c.spec.is_edge(&u, &v));
            assert_ne!(
                c.label_of(&u).unwrap(),
                c.label_of(&v).unwrap(),
                "{u:?} vs {v:?}"
            );
        }
    }

    #[test]
    fn proper_for_every_supported_n_up_to_40() {
        for n in 6..=40 {
            match color_theorem1(n) {
                Ok(c) => {
                    assert_eq!(
                        verify_proper(&c.spec, &c).unwrap(),
                        Verdict::Proper,
                        "n = {n}"
                    );
                    assert!((c.palette_bound as usize) < n);
                }
                Err(ColoringError::UnsupportedN(_)) => assert!(theorem1_prime(n).is_none()),
                Err(e) => panic!("n = {n}: {e}"),
            }
        }
    }
}
