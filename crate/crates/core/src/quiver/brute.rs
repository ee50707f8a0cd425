//! Direct enumeration of stable Kronecker representations over a small prime
//! field. Independent of the recursion; used to check it.

use num_bigint::BigInt;

use super::{eval_at, gl_order, ArrowCount, DimVector, KroneckerSolver, QuiverError};

/// Upper bound on the number of arrow tuples enumerated.
pub const BRUTE_FORCE_LIMIT: u64 = 20_000_000;

const FIELDS: [u64; 3] = [2, 3, 5];

/// Counts `m`-tuples of `b x a` matrices over `F_p` with no nonzero proper
/// subrepresentation of slope at least `slope(d)`.
pub fn brute_force_stable_count(
    d: DimVector,
    m: ArrowCount,
    field: u64,
) -> Result<u64, QuiverError> {
    if !FIELDS.contains(&field) {
        return Err(QuiverError::UnsupportedField(field));
    }
    if d.is_zero() {
        return Err(QuiverError::ZeroVector);
    }
    let entries = m.get() as usize * d.a * d.b;
    let total = (field as u128)
        .checked_pow(entries as u32)
        .unwrap_or(u128::MAX);
    if total > BRUTE_FORCE_LIMIT as u128 {
        return Err(QuiverError::InstanceTooLarge {
            field,
            exponent: entries,
        });
    }
    let total = total as u64;
    let p = field as u32;
    let subspaces = subspaces(d.a, p);
    let (da, db) = (d.a as i64, (d.a + d.b) as i64);

    // Candidate subrepresentation (k, w) destabilizes when k/(k+w) >= a/(a+b).
    let destabilizes = |k: usize, w: usize| (k as i64) * db >= da * ((k + w) as i64);

    let mut maps = vec![vec![vec![0u32; d.a]; d.b]; m.get() as usize];
    let mut stable = 0u64;
    for index in 0..total {
        let mut x = index;
        for map in maps.iter_mut() {
            for row in map.iter_mut() {
                for entry in row.iter_mut() {
                    *entry = (x % field) as u32;
                    x /= field;
                }
            }
        }
        let is_stable = subspaces.iter().all(|basis| {
            let k = basis.len();
            let images: Vec<Vec<u32>> = maps
                .iter()
                .flat_map(|map| basis.iter().map(move |u| apply(map, u, p)))
                .collect();
            let w_min = rank(images, p);
            let w = if k == 0 { w_min.max(1) } else { w_min };
            if w > d.b || (k == d.a && w == d.b) {
                return true;
            }
            !destabilizes(k, w)
        });
        if is_stable {
            stable += 1;
        }
    }
    Ok(stable)
}

/// `P_N(q) |GL_a(q)| |GL_b(q)| / (q - 1)` from the recursion: stable points
/// have only scalar automorphisms.
pub fn predicted_stable_count(
    d: DimVector,
    m: ArrowCount,
    field: u64,
) -> Result<BigInt, QuiverError> {
    let p = KroneckerSolver::new(m).poincare_q(d)?;
    let num = eval_at(&p, field) * eval_at(&gl_order(d.a), field) * eval_at(&gl_order(d.b), field);
    Ok(num / BigInt::from(field - 1))
}

fn apply(map: &[Vec<u32>], u: &[u32], p: u32) -> Vec<u32> {
    map.iter()
        .map(|row| row.iter().zip(u).map(|(x, y)| x * y).sum::<u32>() % p)
        .collect()
}

fn inverse(x: u32, p: u32) -> u32 {
    (1..p)
        .find(|y| x * y % p == 1)
        .expect("nonzero element of a prime field")
}

fn rank(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = inverse(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Every subspace of `F_p^n` as a basis in reduced row echelon form.
fn subspaces(n: usize, p: u32) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        // free slots: row i, column j > pivots[i], j not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &pc)| {
                let pivots = &pivots;
                (pc + 1..n)
                    .filter(move |j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let combos = (p as u64).pow(free.len() as u32);
        for mut x in 0..combos {
            let mut basis = vec![vec![0u32; n]; pivots.len()];
            for (i, &pc) in pivots.iter().enumerate() {
                basis[i][pc] = 1;
            }
            for &(i, j) in &free {
                basis[i][j] = (x % p as u64) as u32;
                x /= p as u64;
            }
            out.push(basis);
        }
    }
    out
}
