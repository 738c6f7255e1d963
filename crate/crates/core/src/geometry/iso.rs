//! Exact lattice-isomorphism search between two arrangements.
//!
//! The search is plain backtracking on the bipartite line correspondence,
//! pruned by per-line incidence profiles and point multiplicities, and it
//! returns a witness bijection rather than a bare boolean so that callers
//! can replay and re-verify it.

use super::{f_vector, line_profile, Arrangement, Lattice};

/// Looks for a bijection `sigma` of line indices such that mapping every
/// multiple point's incident set through `sigma` carries the point family of
/// `a` onto that of `b`. Returns the image vector (`sigma[i]` is the b-index
/// of a-line `i`), or `None` when the lattices are not isomorphic.
pub fn lattice_isomorphic(a: &Arrangement, b: &Arrangement) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let ell = a.len();
    if ell == 0 {
        return Some(Vec::new());
    }
    let lat_a = a.lattice();
    let lat_b = b.lattice();
    if f_vector(&lat_a) != f_vector(&lat_b) {
        return None;
    }

    let profile_key = |lat: &Lattice, i: usize| {
        let p = line_profile(lat, i).expect("index in range");
        (p.n, p.fh)
    };
    let keys_a: Vec<_> = (0..ell).map(|i| profile_key(&lat_a, i)).collect();
    let keys_b: Vec<_> = (0..ell).map(|i| profile_key(&lat_b, i)).collect();

    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(ell);
    for ka in &keys_a {
        let c: Vec<usize> = (0..ell).filter(|&j| &keys_b[j] == ka).collect();
        if c.is_empty() {
            return None;
        }
        candidates.push(c);
    }

    // Most-constrained lines first keeps the search shallow.
    let mut order: Vec<usize> = (0..ell).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    let search = Search {
        pair_point_a: pair_point_table(&lat_a, ell),
        pair_point_b: pair_point_table(&lat_b, ell),
        mu_a: lat_a.points().iter().map(|p| p.mu).collect(),
        mu_b: lat_b.points().iter().map(|p| p.mu).collect(),
        candidates,
        order,
        ell,
    };
    let mut state = State {
        sigma: vec![usize::MAX; ell],
        used_b: vec![false; ell],
        point_map: vec![usize::MAX; lat_a.points().len()],
        point_map_rev: vec![usize::MAX; lat_b.points().len()],
    };
    if search.extend(0, &mut state) {
        Some(state.sigma)
    } else {
        None
    }
}

/// Replays a witness: checks that pushing every point's incident set of `a`
/// through `sigma` lands exactly on the point family of `b`.
pub fn verify_iso_witness(a: &Arrangement, b: &Arrangement, sigma: &[usize]) -> bool {
    if sigma.len() != a.len() || a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for &j in sigma {
        if j >= b.len() || used[j] {
            return false;
        }
        used[j] = true;
    }
    let lat_a = a.lattice();
    let lat_b = b.lattice();
    if lat_a.points().len() != lat_b.points().len() {
        return false;
    }
    lat_a.points().iter().all(|p| {
        let mut image: Vec<usize> = p.incident.iter().map(|&i| sigma[i]).collect();
        image.sort_unstable();
        lat_b.points().iter().any(|q| q.incident == image)
    })
}

/// `table[i][j]` is the index of the unique lattice point containing lines
/// `i` and `j` (`usize::MAX` on the diagonal).
fn pair_point_table(lat: &Lattice, ell: usize) -> Vec<Vec<usize>> {
    let mut table = vec![vec![usize::MAX; ell]; ell];
    for (k, p) in lat.points().iter().enumerate() {
        for (s, &i) in p.incident.iter().enumerate() {
            for &j in &p.incident[s + 1..] {
                table[i][j] = k;
                table[j][i] = k;
            }
        }
    }
    table
}

struct Search {
    pair_point_a: Vec<Vec<usize>>,
    pair_point_b: Vec<Vec<usize>>,
    mu_a: Vec<usize>,
    mu_b: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
    ell: usize,
}

struct State {
    sigma: Vec<usize>,
    used_b: Vec<bool>,
    point_map: Vec<usize>,
    point_map_rev: Vec<usize>,
}

impl Search {
    fn extend(&self, depth: usize, state: &mut State) -> bool {
        if depth == self.ell {
            return true;
        }
        let i = self.order[depth];
        for &j in &self.candidates[i] {
            if state.used_b[j] {
                continue;
            }
            if let Some(touched) = self.try_assign(i, j, state) {
                state.sigma[i] = j;
                state.used_b[j] = true;
                if self.extend(depth + 1, state) {
                    return true;
                }
                state.sigma[i] = usize::MAX;
                state.used_b[j] = false;
                for pa in touched {
                    let pb = state.point_map[pa];
                    state.point_map[pa] = usize::MAX;
                    state.point_map_rev[pb] = usize::MAX;
                }
            }
        }
        false
    }

    /// Checks pairwise consistency of assigning b-line `j` to a-line `i`;
    /// on success returns the a-points newly bound by this assignment.
    fn try_assign(&self, i: usize, j: usize, state: &mut State) -> Option<Vec<usize>> {
        let mut touched = Vec::new();
        for i2 in 0..self.ell {
            let j2 = state.sigma[i2];
            if j2 == usize::MAX || i2 == i {
                continue;
            }
            let pa = self.pair_point_a[i][i2];
            let pb = self.pair_point_b[j][j2];
            let bound = state.point_map[pa];
            if bound != usize::MAX {
                if bound != pb {
                    self.rollback(&touched, state);
                    return None;
                }
                continue;
            }
            if self.mu_a[pa] != self.mu_b[pb] || state.point_map_rev[pb] != usize::MAX {
                self.rollback(&touched, state);
                return None;
            }
            state.point_map[pa] = pb;
            state.point_map_rev[pb] = pa;
            touched.push(pa);
        }
        Some(touched)
    }

    fn rollback(&self, touched: &[usize], state: &mut State) {
        for &pa in touched {
            let pb = state.point_map[pa];
            state.point_map[pa] = usize::MAX;
            state.point_map_rev[pb] = usize::MAX;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldContext;
    use crate::geometry::HomogeneousTriple;

    fn rational_lines(coeffs: &[[i64; 3]]) -> Arrangement {
        let ctx = FieldContext::rational();
        let lines = coeffs
            .iter()
            .map(|c| HomogeneousTriple::from_ints(ctx, *c).unwrap())
            .collect();
        Arrangement::new(ctx, lines).unwrap()
    }

    #[test]
    fn identity_and_permutation_are_isomorphic() {
        let arr = rational_lines(&[[1, 0, 0], [0, 1, 0], [1, -1, 0], [0, 0, 1], [1, 1, -1]]);
        let perm = rational_lines(&[[1, 1, -1], [0, 0, 1], [1, -1, 0], [0, 1, 0], [1, 0, 0]]);
        let sigma = lattice_isomorphic(&arr, &perm).expect("reordering is an isomorphism");
        assert!(verify_iso_witness(&arr, &perm, &sigma));
    }

    #[test]
    fn different_f_vectors_are_rejected() {
        let pencil = rational_lines(&[[1, 0, 0], [0, 1, 0], [1, -1, 0]]);
        let triangle = rational_lines(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(lattice_isomorphic(&pencil, &triangle), None);
    }

    #[test]
    fn same_f_vector_different_lattice_is_rejected() {
        // Both have F = [9, 2], but in `a` the two triple points share a
        // line while in `b` they do not.
        let a = rational_lines(&[
            [1, 0, 0],
            [0, 1, 0],
            [1, -1, 0],
            [0, 0, 1],
            [1, 0, -1],
            [1, 2, 3],
        ]);
        let b = rational_lines(&[
            [1, 0, 0],
            [0, 1, 0],
            [1, -1, 0],
            [1, 0, -1],
            [1, 1, -3],
            [0, 1, -2],
        ]);
        assert_eq!(
            f_vector(&a.lattice()).entries(),
            f_vector(&b.lattice()).entries()
        );
        assert_eq!(f_vector(&a.lattice()).entries(), &[9, 2]);
        assert_eq!(lattice_isomorphic(&a, &b), None);
        assert!(lattice_isomorphic(&a, &a.clone()).is_some());
    }
}
