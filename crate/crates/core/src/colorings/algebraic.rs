use super::{Coloring, ColoringError, Method};
use crate::distgraph::GraphSpec;
use crate::gf::bose_chowla_set;
use crate::numtheory::is_prime;

/// Sum of the elements modulo `n`; proper on G(n, r, r - 1).
pub fn color_sum(n: usize, r: usize) -> Result<Coloring, ColoringError> {
    if r == 0 || r >= n {
        return Err(ColoringError::BadInput(format!(
            "sum coloring needs 1 <= r < n, got n={n}, r={r}"
        )));
    }
    let spec = GraphSpec::new(n, r, r - 1)?;
    Coloring::from_fn(spec, Method::SumModN, n as u64, |v| {
        v.iter().map(|&x| x as u64).sum::<u64>() % n as u64
    })
}

fn prime_spec(n: usize, r: usize, s: usize) -> Result<(GraphSpec, u32), ColoringError> {
    let spec = GraphSpec::new(n, r, s)?;
    if !is_prime(n as u64) {
        return Err(ColoringError::NotPrime(n as u64));
    }
    Ok((spec, (r - s) as u32))
}

/// `σ_1, ..., σ_h` of `xs` modulo `m` (index 0 holds `σ_0 = 1`).
pub fn elementary_symmetric(xs: &[usize], h: usize, m: u64) -> Vec<u64> {
    let mut sigma = vec![0u64; h + 1];
    sigma[0] = 1 % m;
    for &x in xs {
        let x = x as u64 % m;
        for k in (1..=h).rev() {
            sigma[k] = (sigma[k] + sigma[k - 1] * x) % m;
        }
    }
    sigma
}

/// Color `(σ_1(x), ..., σ_h(x)) mod n`, packed base `n` with `σ_1` most
/// significant; `h = r - s`, `n` prime.
pub fn color_symmetric(n: usize, r: usize, s: usize) -> Result<Coloring, ColoringError> {
    let (spec, h) = prime_spec(n, r, s)?;
    let m = n as u64;
    let palette = m
        .checked_pow(h)
        .ok_or(ColoringError::PaletteOverflow(spec))?;
    Coloring::from_fn(spec, Method::SymmetricPoly, palette, |v| {
        elementary_symmetric(v, h as usize, m)[1..]
            .iter()
            .fold(0u64, |acc, &sig| acc * m + sig)
    })
}

/// Color `a_{x_1} + ... + a_{x_r} mod (n^h - 1)` where `a` is the sorted
/// Bose–Chowla `B_h` set for `q = n`, `h = r - s`. For `h = 1` the residues
/// `a_i = i` modulo `n` are used instead.
pub fn color_bose_chowla(n: usize, r: usize, s: usize) -> Result<Coloring, ColoringError> {
    let (spec, h) = prime_spec(n, r, s)?;
    let (weights, modulus): (Vec<u64>, u64) = if h == 1 {
        ((0..n as u64).collect(), n as u64)
    } else {
        let set = bose_chowla_set(n as u64, h as usize)?;
        (set.elements, set.modulus)
    };
    Coloring::from_fn(spec, Method::BoseChowla, modulus, |v| {
        v.iter().fold(0u64, |acc, &x| (acc + weights[x]) % modulus)
    })
}
