//! Truncated two-mode Fock space, in both occupation labels (n_a, n_b) and
//! angular labels (N, m), with dense matrix realizations of the ladder
//! operators and the Jordan-Schwinger su(1,1) generators.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// Angular labels of a two-mode Fock state: principal number N = n_a + n_b
/// and angular number m = n_a - n_b (so N - m must be even and |m| <= N).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    n: u32,
    m: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > n || (n as i64 - m as i64) % 2 != 0 {
            return Err(Error::InvalidQuantumNumbers { n, m });
        }
        Ok(Self { n, m })
    }

    pub fn from_occupation(n_a: u32, n_b: u32) -> Self {
        Self { n: n_a + n_b, m: n_a as i32 - n_b as i32 }
    }

    /// Principal quantum number N.
    pub fn principal(&self) -> u32 {
        self.n
    }

    /// Angular quantum number m.
    pub fn angular(&self) -> i32 {
        self.m
    }

    pub fn n_a(&self) -> u32 {
        ((self.n as i64 + self.m as i64) / 2) as u32
    }

    pub fn n_b(&self) -> u32 {
        ((self.n as i64 - self.m as i64) / 2) as u32
    }

    /// Radial quantum number n_r = (N - |m|)/2.
    pub fn radial(&self) -> u32 {
        (self.n - self.m.unsigned_abs()) / 2
    }
}

/// Bargmann index of the fixed-m sector, k = (|m| + 1)/2.
///
/// The Casimir eigenvalue k(k-1) = (m^2 - 1)/4 is even in m, which forces the
/// absolute value for negative sectors.
pub fn bargmann_index(m: i32) -> f64 {
    (m.unsigned_abs() as f64 + 1.0) / 2.0
}

/// Fixed-m subspace with N = |m|, |m|+2, ..., <= N_max, ordered by N.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    m: i32,
    n_max: u32,
    states: Vec<QuantumNumbers>,
}

impl SectorBasis {
    pub fn new(m: i32, n_max: u32) -> Result<Self> {
        if n_max < m.unsigned_abs() {
            return Err(Error::InvalidSpec(format!(
                "N_max = {n_max} is below |m| = {}",
                m.unsigned_abs()
            )));
        }
        let states = (m.unsigned_abs()..=n_max)
            .step_by(2)
            .map(|n| QuantumNumbers::new(n, m).expect("sector states are valid by construction"))
            .collect();
        Ok(Self { m, n_max, states })
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[QuantumNumbers] {
        &self.states
    }

    pub fn state(&self, idx: usize) -> QuantumNumbers {
        self.states[idx]
    }

    /// Sector index of the state with principal number N.
    pub fn index_of(&self, n: u32) -> Option<usize> {
        if n < self.m.unsigned_abs() || n > self.n_max || !(n - self.m.unsigned_abs()).is_multiple_of(2) {
            return None;
        }
        Some(((n - self.m.unsigned_abs()) / 2) as usize)
    }

    pub fn bargmann_index(&self) -> f64 {
        bargmann_index(self.m)
    }
}

/// All occupation states with n_a + n_b <= N_max, ordered lexicographically.
#[derive(Debug, Clone)]
pub struct FullBasis {
    n_max: u32,
    states: Vec<(u32, u32)>,
}

impl FullBasis {
    pub fn new(n_max: u32) -> Self {
        let mut states = Vec::new();
        for n_a in 0..=n_max {
            for n_b in 0..=(n_max - n_a) {
                states.push((n_a, n_b));
            }
        }
        Self { n_max, states }
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[(u32, u32)] {
        &self.states
    }

    pub fn index_of(&self, n_a: u32, n_b: u32) -> Option<usize> {
        if n_a + n_b > self.n_max {
            return None;
        }
        // Lexicographic layout: states with first label < n_a come first.
        let skipped: u32 = (0..n_a).map(|k| self.n_max - k + 1).sum();
        Some(skipped as usize + n_b as usize)
    }
}

/// Dense ladder matrices on a [`FullBasis`].
pub struct BosonOperators {
    pub a: ComplexMatrix,
    pub a_dag: ComplexMatrix,
    pub b: ComplexMatrix,
    pub b_dag: ComplexMatrix,
}

/// Standard ladder matrices; the commutation relations hold exactly on rows
/// and columns away from the truncation boundary.
pub fn boson_matrices(basis: &FullBasis) -> BosonOperators {
    let dim = basis.dim();
    let mut a = ComplexMatrix::zeros(dim, dim);
    let mut b = ComplexMatrix::zeros(dim, dim);
    for (col, &(n_a, n_b)) in basis.states().iter().enumerate() {
        if n_a > 0 {
            let row = basis.index_of(n_a - 1, n_b).expect("lowering stays inside the basis");
            a[(row, col)] = C64::new((n_a as f64).sqrt(), 0.0);
        }
        if n_b > 0 {
            let row = basis.index_of(n_a, n_b - 1).expect("lowering stays inside the basis");
            b[(row, col)] = C64::new((n_b as f64).sqrt(), 0.0);
        }
    }
    let a_dag = a.dagger();
    let b_dag = b.dagger();
    BosonOperators { a, a_dag, b, b_dag }
}

/// K+ = a^dag b^dag alone on the full basis; cheaper than building the whole
/// generator set when only the displacement argument is needed.
pub fn jordan_schwinger_kplus(basis: &FullBasis) -> ComplexMatrix {
    let dim = basis.dim();
    let mut kp = ComplexMatrix::zeros(dim, dim);
    for (col, &(n_a, n_b)) in basis.states().iter().enumerate() {
        if let Some(row) = basis.index_of(n_a + 1, n_b + 1) {
            let coeff = ((n_a as f64 + 1.0) * (n_b as f64 + 1.0)).sqrt();
            kp[(row, col)] = C64::new(coeff, 0.0);
        }
    }
    kp
}

/// The su(1,1) generators (plus the commuting su(2) label operator J0 and the
/// Casimir K^2) realized as dense matrices on a basis.
pub struct SuGenerators {
    pub k0: ComplexMatrix,
    pub kp: ComplexMatrix,
    pub km: ComplexMatrix,
    pub j0: ComplexMatrix,
    pub k2: ComplexMatrix,
}

impl SuGenerators {
    /// Jordan-Schwinger realization on the full two-mode basis:
    /// K0 = (a^dag a + b^dag b + 1)/2, K+ = a^dag b^dag, K- = ab,
    /// J0 = (a^dag a - b^dag b)/2, K^2 = J0^2 - 1/4.
    pub fn on_full(basis: &FullBasis) -> Self {
        let dim = basis.dim();
        let mut k0 = ComplexMatrix::zeros(dim, dim);
        let mut j0 = ComplexMatrix::zeros(dim, dim);
        let mut kp = ComplexMatrix::zeros(dim, dim);
        for (col, &(n_a, n_b)) in basis.states().iter().enumerate() {
            k0[(col, col)] = C64::new((n_a as f64 + n_b as f64 + 1.0) / 2.0, 0.0);
            j0[(col, col)] = C64::new((n_a as f64 - n_b as f64) / 2.0, 0.0);
            if let Some(row) = basis.index_of(n_a + 1, n_b + 1) {
                let coeff = ((n_a as f64 + 1.0) * (n_b as f64 + 1.0)).sqrt();
                kp[(row, col)] = C64::new(coeff, 0.0);
            }
        }
        let km = kp.dagger();
        let k2 = Self::casimir_from_j0(&j0);
        Self { k0, kp, km, j0, k2 }
    }

    /// Sector realization using the ladder actions on |N, m> directly.
    pub fn on_sector(basis: &SectorBasis) -> Self {
        let dim = basis.dim();
        let m = basis.m() as f64;
        let mut k0 = ComplexMatrix::zeros(dim, dim);
        let mut j0 = ComplexMatrix::zeros(dim, dim);
        let mut kp = ComplexMatrix::zeros(dim, dim);
        for (col, q) in basis.states().iter().enumerate() {
            let nn = q.principal() as f64;
            k0[(col, col)] = C64::new((nn + 1.0) / 2.0, 0.0);
            j0[(col, col)] = C64::new(m / 2.0, 0.0);
            if col + 1 < dim {
                // K+ |N,m> = sqrt(((N+m)/2 + 1)((N-m)/2 + 1)) |N+2,m>
                let coeff = ((q.n_a() as f64 + 1.0) * (q.n_b() as f64 + 1.0)).sqrt();
                kp[(col + 1, col)] = C64::new(coeff, 0.0);
            }
        }
        let km = kp.dagger();
        let k2 = Self::casimir_from_j0(&j0);
        Self { k0, kp, km, j0, k2 }
    }

    fn casimir_from_j0(j0: &ComplexMatrix) -> ComplexMatrix {
        let quarter = ComplexMatrix::identity(j0.rows()).scale(C64::new(0.25, 0.0));
        j0.mul(j0).sub(&quarter)
    }
}

/// The four boson ladder operators acting on angular labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderOp {
    A,
    ADag,
    B,
    BDag,
}

/// Action of a ladder operator on |N, m>; `None` means the state is
/// annihilated (lowering an empty mode).
pub fn sector_actions(op: LadderOp, q: QuantumNumbers) -> Option<(f64, QuantumNumbers)> {
    let (n, m) = (q.principal(), q.angular());
    match op {
        LadderOp::A => {
            if q.n_a() == 0 {
                None
            } else {
                let coeff = (q.n_a() as f64).sqrt();
                Some((coeff, QuantumNumbers::new(n - 1, m - 1).expect("valid by construction")))
            }
        }
        LadderOp::ADag => {
            let coeff = (q.n_a() as f64 + 1.0).sqrt();
            Some((coeff, QuantumNumbers::new(n + 1, m + 1).expect("valid by construction")))
        }
        LadderOp::B => {
            if q.n_b() == 0 {
                None
            } else {
                let coeff = (q.n_b() as f64).sqrt();
                Some((coeff, QuantumNumbers::new(n - 1, m + 1).expect("valid by construction")))
            }
        }
        LadderOp::BDag => {
            let coeff = (q.n_b() as f64 + 1.0).sqrt();
            Some((coeff, QuantumNumbers::new(n + 1, m - 1).expect("valid by construction")))
        }
    }
}

/// Embed a sector state vector into the full basis.
pub fn embed_sector_vector(
    sector: &SectorBasis,
    full: &FullBasis,
    v: &[C64],
) -> Result<Vec<C64>> {
    if v.len() != sector.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} vs sector dimension {}",
            v.len(),
            sector.dim()
        )));
    }
    if full.n_max() < sector.n_max() {
        return Err(Error::DimensionMismatch(format!(
            "full basis N_max {} below sector N_max {}",
            full.n_max(),
            sector.n_max()
        )));
    }
    let mut out = vec![C64::new(0.0, 0.0); full.dim()];
    for (i, q) in sector.states().iter().enumerate() {
        let idx = full
            .index_of(q.n_a(), q.n_b())
            .expect("sector states fit inside the full basis");
        out[idx] = v[i];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interior_max_abs(m: &ComplexMatrix, basis: &FullBasis, margin: u32) -> f64 {
        let mut best = 0.0_f64;
        for (i, &(ia, ib)) in basis.states().iter().enumerate() {
            if ia + ib + margin > basis.n_max() {
                continue;
            }
            for (j, &(ja, jb)) in basis.states().iter().enumerate() {
                if ja + jb + margin > basis.n_max() {
                    continue;
                }
                best = best.max(m[(i, j)].norm());
            }
        }
        best
    }

    #[test]
    fn quantum_number_constraints() {
        assert!(QuantumNumbers::new(3, 1).is_ok());
        assert!(QuantumNumbers::new(3, 2).is_err()); // parity
        assert!(QuantumNumbers::new(2, 4).is_err()); // |m| > N
        let q = QuantumNumbers::new(4, -2).unwrap();
        assert_eq!((q.n_a(), q.n_b(), q.radial()), (1, 3, 1));
    }

    #[test]
    fn basis_dimensions() {
        assert_eq!(FullBasis::new(40).dim(), 41 * 42 / 2);
        assert_eq!(SectorBasis::new(0, 60).unwrap().dim(), 31);
        assert_eq!(SectorBasis::new(3, 9).unwrap().dim(), 4);
        assert_eq!(SectorBasis::new(-3, 9).unwrap().dim(), 4);
    }

    #[test]
    fn full_basis_index_lookup_is_consistent() {
        let basis = FullBasis::new(9);
        for (i, &(na, nb)) in basis.states().iter().enumerate() {
            assert_eq!(basis.index_of(na, nb), Some(i));
        }
        assert_eq!(basis.index_of(5, 5), None);
    }

    #[test]
    fn ladder_matrix_elements() {
        let basis = FullBasis::new(4);
        let ops = boson_matrices(&basis);
        let i00 = basis.index_of(0, 0).unwrap();
        let i10 = basis.index_of(1, 0).unwrap();
        let i20 = basis.index_of(2, 0).unwrap();
        assert_eq!(ops.a[(i00, i10)], C64::new(1.0, 0.0));
        assert!((ops.a_dag[(i20, i10)].re - 2.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn interior_commutators_close_the_algebra() {
        let basis = FullBasis::new(14);
        let ops = boson_matrices(&basis);
        let id = ComplexMatrix::identity(basis.dim());

        let comm_a = ops.a.commutator(&ops.a_dag).sub(&id);
        assert!(interior_max_abs(&comm_a, &basis, 2) < 1e-12);

        let g = SuGenerators::on_full(&basis);
        let c1 = g.k0.commutator(&g.kp).sub(&g.kp);
        let c2 = g.k0.commutator(&g.km).add(&g.km);
        let c3 = g.km.commutator(&g.kp).sub(&g.k0.scale(C64::new(2.0, 0.0)));
        assert!(interior_max_abs(&c1, &basis, 2) < 1e-10);
        assert!(interior_max_abs(&c2, &basis, 2) < 1e-10);
        assert!(interior_max_abs(&c3, &basis, 2) < 1e-10);
    }

    #[test]
    fn j0_commutes_exactly_with_generators() {
        let basis = FullBasis::new(10);
        let g = SuGenerators::on_full(&basis);
        assert_eq!(g.j0.commutator(&g.k0).max_abs(), 0.0);
        assert_eq!(g.j0.commutator(&g.kp).max_abs(), 0.0);
        assert_eq!(g.j0.commutator(&g.km).max_abs(), 0.0);
    }

    #[test]
    fn casimir_matches_j0_identity_exactly() {
        let basis = FullBasis::new(10);
        let g = SuGenerators::on_full(&basis);
        let quarter = ComplexMatrix::identity(basis.dim()).scale(C64::new(0.25, 0.0));
        assert_eq!(g.k2, g.j0.mul(&g.j0).sub(&quarter));
    }

    #[test]
    fn generator_diagonals_match_angular_labels() {
        // K0 at |4,2> is 2.5, J0 is 1.0, K^2 at |N,3> is 2.0 = k(k-1) with k = 2.
        let basis = FullBasis::new(8);
        let g = SuGenerators::on_full(&basis);
        let q = QuantumNumbers::new(4, 2).unwrap();
        let idx = basis.index_of(q.n_a(), q.n_b()).unwrap();
        assert_eq!(g.k0[(idx, idx)].re, 2.5);
        assert_eq!(g.j0[(idx, idx)].re, 1.0);
        let q3 = QuantumNumbers::new(5, 3).unwrap();
        let i3 = basis.index_of(q3.n_a(), q3.n_b()).unwrap();
        let k = bargmann_index(3);
        assert_eq!(g.k2[(i3, i3)].re, k * (k - 1.0));
    }

    #[test]
    fn bargmann_index_values() {
        assert_eq!(bargmann_index(0), 0.5);
        assert_eq!(bargmann_index(3), 2.0);
        assert_eq!(bargmann_index(-3), 2.0);
    }

    #[test]
    fn sector_action_examples() {
        let q20 = QuantumNumbers::new(2, 0).unwrap();
        let (c, target) = sector_actions(LadderOp::A, q20).unwrap();
        assert_eq!(c, 1.0);
        assert_eq!(target, QuantumNumbers::new(1, -1).unwrap());

        let q11 = QuantumNumbers::new(1, 1).unwrap();
        let (c, target) = sector_actions(LadderOp::BDag, q11).unwrap();
        assert_eq!(c, 1.0);
        assert_eq!(target, QuantumNumbers::new(2, 0).unwrap());

        let vacuum = QuantumNumbers::new(0, 0).unwrap();
        assert!(sector_actions(LadderOp::A, vacuum).is_none());
    }

    #[test]
    fn sector_actions_agree_with_boson_matrices() {
        let basis = FullBasis::new(8);
        let ops = boson_matrices(&basis);
        for &(na, nb) in basis.states() {
            let q = QuantumNumbers::from_occupation(na, nb);
            let col = basis.index_of(na, nb).unwrap();
            for (op, matrix) in [
                (LadderOp::A, &ops.a),
                (LadderOp::ADag, &ops.a_dag),
                (LadderOp::B, &ops.b),
                (LadderOp::BDag, &ops.b_dag),
            ] {
                match sector_actions(op, q) {
                    Some((coeff, target)) => {
                        if let Some(row) = basis.index_of(target.n_a(), target.n_b()) {
                            assert!((matrix[(row, col)].re - coeff).abs() < 1e-14);
                        }
                    }
                    None => {
                        let col_norm: f64 = (0..basis.dim()).map(|r| matrix[(r, col)].norm()).sum();
                        assert_eq!(col_norm, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn full_generators_are_block_diagonal_in_m() {
        let basis = FullBasis::new(10);
        let g = SuGenerators::on_full(&basis);
        for (i, &(ia, ib)) in basis.states().iter().enumerate() {
            for (j, &(ja, jb)) in basis.states().iter().enumerate() {
                let mi = ia as i32 - ib as i32;
                let mj = ja as i32 - jb as i32;
                if mi != mj {
                    assert_eq!(g.k0[(i, j)].norm(), 0.0);
                    assert_eq!(g.kp[(i, j)].norm(), 0.0);
                    assert_eq!(g.km[(i, j)].norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn sector_block_matches_full_matrices() {
        let full = FullBasis::new(12);
        let gf = SuGenerators::on_full(&full);
        for m in [-2i32, 0, 3] {
            let sector = SectorBasis::new(m, 12).unwrap();
            let gs = SuGenerators::on_sector(&sector);
            let map: Vec<usize> = sector
                .states()
                .iter()
                .map(|q| full.index_of(q.n_a(), q.n_b()).unwrap())
                .collect();
            for i in 0..sector.dim() {
                for j in 0..sector.dim() {
                    assert_eq!(gs.kp[(i, j)], gf.kp[(map[i], map[j])]);
                    assert_eq!(gs.k0[(i, j)], gf.k0[(map[i], map[j])]);
                    assert_eq!(gs.j0[(i, j)], gf.j0[(map[i], map[j])]);
                }
            }
        }
    }
}
