//! The lattice of subspaces of ℂⁿ.
//!
//! Every [`Subspace`] stores its basis in reduced row-echelon form, so two
//! subspaces are equal exactly when their stored matrices are identical.
//! Meet is intersection, join is span, and negation is the orthogonal
//! complement under the Hermitian form `⟨u, v⟩ = Σ conj(uᵢ)·vᵢ`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;

/// Resampling cap for [`random_subspace`].
const MAX_SAMPLING_ATTEMPTS: usize = 256;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// The zero subspace `𝟎` of ℂⁿ.
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::empty(ambient),
        }
    }

    /// The full space `𝟏 = ℂⁿ`.
    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Canonical span of the rows of `vectors`. Zero and dependent rows are fine.
    pub fn from_spanning(vectors: &Matrix, ambient: usize) -> Result<Self> {
        if vectors.cols() != ambient {
            return Err(Error::DimensionMismatch(format!(
                "spanning vectors have {} coordinates, ambient is {ambient}",
                vectors.cols()
            )));
        }
        Ok(Subspace {
            ambient,
            basis: vectors.row_space_basis(),
        })
    }

    /// Span of the standard basis vectors `e_k` for each set bit `k` of `mask`.
    pub fn coordinate(ambient: usize, mask: u64) -> Self {
        let mut rows = Vec::new();
        for k in 0..ambient {
            if mask >> k & 1 == 1 {
                let mut v = vec![GaussianRational::zero(); ambient];
                v[k] = GaussianRational::one();
                rows.push(v);
            }
        }
        Subspace {
            ambient,
            basis: Matrix::from_rows(ambient, rows).expect("coordinate rows"),
        }
    }

    /// Span of a single vector.
    pub fn line(vector: Vec<GaussianRational>) -> Self {
        let n = vector.len();
        let m = Matrix::from_rows(n, vec![vector]).expect("one row");
        Subspace::from_spanning(&m, n).expect("width matches")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Subspace {
            ambient: self.ambient,
            basis: stacked.row_space_basis(),
        })
    }

    /// Orthogonal complement: `{v : ⟨b, v⟩ = 0 for every basis vector b}`.
    pub fn complement(&self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            basis: self.basis.conj().kernel(),
        }
    }

    /// Rows `c` such that the subspace is exactly `{v : c·v = 0}`.
    fn constraints(&self) -> Matrix {
        self.complement().basis.conj()
    }

    /// Intersection, computed as the common kernel of both constraint systems.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        if self.is_full() || other.is_zero() {
            return Ok(other.clone());
        }
        if other.is_full() || self.is_zero() {
            return Ok(self.clone());
        }
        let stacked = self.constraints().vstack(&other.constraints())?;
        Ok(Subspace {
            ambient: self.ambient,
            basis: stacked.kernel(),
        })
    }

    /// Intersection via De Morgan: `¬(¬p ∨ ¬q)`. Kept as an independent
    /// cross-check of [`Subspace::meet`].
    pub fn meet_de_morgan(&self, other: &Subspace) -> Result<Subspace> {
        Ok(self.complement().join(&other.complement())?.complement())
    }

    /// Inclusion `self ⊆ other`.
    pub fn leq(&self, other: &Subspace) -> Result<bool> {
        Ok(self.meet(other)? == *self)
    }

    /// True when `v` (given by its coordinates) lies in the subspace.
    pub fn contains(&self, v: &[GaussianRational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} coordinates, ambient is {}",
                v.len(),
                self.ambient
            )));
        }
        let row = Matrix::from_rows(self.ambient, vec![v.to_vec()])?;
        Ok(self.basis.vstack(&row)?.rank() == self.dim())
    }

    /// Direct sum `self ⊕ pad` inside ℂʷ: `self` occupies the first
    /// coordinates and `pad` the remaining `w - ambient` coordinates.
    pub fn embed(&self, bigger_ambient: usize, pad: &Subspace) -> Result<Subspace> {
        if bigger_ambient < self.ambient || pad.ambient != bigger_ambient - self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "coordinate blocks overlap: C^{} + C^{} does not tile C^{bigger_ambient}",
                self.ambient, pad.ambient
            )));
        }
        let mut rows = Vec::with_capacity(self.dim() + pad.dim());
        for r in self.basis.row_iter() {
            let mut v = r.to_vec();
            v.resize(bigger_ambient, GaussianRational::zero());
            rows.push(v);
        }
        for r in pad.basis.row_iter() {
            let mut v = vec![GaussianRational::zero(); self.ambient];
            v.extend_from_slice(r);
            rows.push(v);
        }
        let m = Matrix::from_rows(bigger_ambient, rows)?;
        Subspace::from_spanning(&m, bigger_ambient)
    }

    /// Parses the subspace fixture format: ambient dimension on the first
    /// line, then spanning rows in the matrix text format.
    pub fn parse_fixture(src: &str) -> Result<Subspace> {
        let mut lines = src.split_inclusive('\n');
        let mut offset = 0;
        let ambient = loop {
            let Some(line) = lines.next() else {
                return Err(Error::parse_at(src, offset, "missing ambient dimension"));
            };
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                offset += line.len();
                continue;
            }
            break content
                .parse::<usize>()
                .map_err(|_| Error::parse_at(src, offset, format!("bad ambient dimension `{content}`")))?;
        };
        let first_len = src[offset..].find('\n').map_or(src.len() - offset, |k| k + 1);
        let rest_start = offset + first_len;
        let rest = &src[rest_start.min(src.len())..];
        let m = Matrix::parse(rest, Some(ambient)).map_err(|e| shift_parse_error(e, src, rest_start))?;
        Subspace::from_spanning(&m, ambient)
    }

    /// Inverse of [`Subspace::parse_fixture`].
    pub fn to_fixture(&self) -> String {
        format!("{}\n{}", self.ambient, self.basis)
    }
}

/// Re-anchors a parse error from a suffix of `src` onto `src` itself.
pub(crate) fn shift_parse_error(err: Error, src: &str, base: usize) -> Error {
    match err {
        Error::Parse { line, column, message } => {
            let before = &src[..base.min(src.len())];
            let base_line = before.matches('\n').count();
            let col = if line == 1 {
                before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + column
            } else {
                column
            };
            Error::Parse {
                line: base_line + line,
                column: col,
                message,
            }
        }
        other => other,
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(C^{}, dim {}, {:?})", self.ambient, self.dim(), self.basis)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (of C^{})", self.ambient);
        }
        let rows: Vec<String> = self
            .basis
            .row_iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("({})", cells.join(", "))
            })
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

/// Draws a subspace of the given dimension whose spanning vectors have
/// Gaussian-integer entries with parts in `[-coeff_bound, coeff_bound]`.
pub fn random_subspace_with<R: Rng + ?Sized>(
    rng: &mut R,
    ambient: usize,
    dim: usize,
    coeff_bound: i64,
) -> Result<Subspace> {
    if dim > ambient {
        return Err(Error::InvalidArgument(format!(
            "cannot draw a {dim}-dimensional subspace of C^{ambient}"
        )));
    }
    if dim == 0 {
        return Ok(Subspace::zero(ambient));
    }
    if dim == ambient {
        return Ok(Subspace::full(ambient));
    }
    for _ in 0..MAX_SAMPLING_ATTEMPTS {
        let entries = (0..dim * ambient)
            .map(|_| {
                GaussianRational::from_ints(
                    rng.gen_range(-coeff_bound..=coeff_bound),
                    rng.gen_range(-coeff_bound..=coeff_bound),
                )
            })
            .collect();
        let m = Matrix::new(dim, ambient, entries)?;
        let s = Subspace::from_spanning(&m, ambient)?;
        if s.dim() == dim {
            return Ok(s);
        }
    }
    Err(Error::SamplingFailed(format!(
        "no rank-{dim} sample in C^{ambient} after {MAX_SAMPLING_ATTEMPTS} attempts (coefficient bound {coeff_bound})"
    )))
}

/// Deterministic in `seed`; see [`random_subspace_with`].
pub fn random_subspace(ambient: usize, dim: usize, seed: u64, coeff_bound: i64) -> Result<Subspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_subspace_with(&mut rng, ambient, dim, coeff_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn span(n: usize, rows: &str) -> Subspace {
        Subspace::from_spanning(&Matrix::parse(rows, Some(n)).unwrap(), n).unwrap()
    }

    fn hermitian(u: &[GaussianRational], v: &[GaussianRational]) -> GaussianRational {
        u.iter()
            .zip(v)
            .fold(GaussianRational::zero(), |acc, (a, b)| &acc + &(&a.conj() * b))
    }

    #[test]
    fn from_spanning_examples() {
        assert_eq!(
            Subspace::from_spanning(&Matrix::empty(3), 3).unwrap(),
            Subspace::zero(3)
        );
        let plane = span(4, "1 0 0 0\n0 1 0 0");
        assert_eq!(plane.dim(), 2);
        assert_eq!(plane, Subspace::coordinate(4, 0b11));
        assert_eq!(span(2, "1 0\n2 0").dim(), 1);
        assert!(Subspace::from_spanning(&Matrix::identity(2), 3).is_err());
    }

    #[test]
    fn join_examples() {
        let p = span(3, "1 2 3");
        assert_eq!(p.join(&Subspace::zero(3)).unwrap(), p);
        assert_eq!(span(2, "1 0").join(&span(2, "0 1")).unwrap(), Subspace::full(2));
        // Stacking the four vectors and row reducing by hand leaves e1, e2, e3.
        let l = span(4, "1 0 0 0\n0 1 0 0");
        let r = span(4, "1 0 0 0\n0 1 1 0");
        assert_eq!(l.join(&r).unwrap(), Subspace::coordinate(4, 0b111));
        assert!(p.join(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn meet_examples() {
        let p = span(3, "1 1*i 0");
        assert_eq!(p.meet(&Subspace::full(3)).unwrap(), p);
        assert_eq!(
            Subspace::coordinate(3, 0b011)
                .meet(&Subspace::coordinate(3, 0b110))
                .unwrap(),
            Subspace::coordinate(3, 0b010)
        );
        let a = random_subspace(3, 2, 1, 3).unwrap();
        let b = random_subspace(3, 2, 2, 3).unwrap();
        let m = a.meet(&b).unwrap();
        assert!(m.dim() >= 1);
        assert_eq!(m, a.meet_de_morgan(&b).unwrap());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Subspace::zero(3).complement(), Subspace::full(3));
        assert_eq!(span(2, "1 0").complement(), span(2, "0 1"));
        let p = span(2, "1 1*i");
        let c = p.complement();
        assert_eq!(c.dim(), 1);
        assert!(hermitian(p.basis().row(0), c.basis().row(0)).is_zero());
        assert_eq!(c, span(2, "1*i 1"));
    }

    #[test]
    fn leq_examples() {
        let p = span(3, "1 2 0");
        assert!(Subspace::zero(3).leq(&p).unwrap());
        assert!(span(3, "1 0 0").leq(&Subspace::coordinate(3, 0b011)).unwrap());
        assert!(!Subspace::coordinate(3, 0b011).leq(&span(3, "1 0 0")).unwrap());
    }

    #[test]
    fn embed_examples() {
        let l = span(2, "1 1");
        let e = l.embed(4, &Subspace::zero(2)).unwrap();
        assert_eq!((e.ambient(), e.dim()), (4, 1));
        assert_eq!(e, span(4, "1 1 0 0"));
        assert_eq!(l.embed(4, &Subspace::full(2)).unwrap().dim(), 3);
        assert!(l.embed(4, &Subspace::full(1)).is_err());
        assert!(l.embed(1, &Subspace::zero(0)).is_err());
    }

    #[test]
    fn random_subspace_contract() {
        assert_eq!(random_subspace(4, 0, 99, 3).unwrap(), Subspace::zero(4));
        assert_eq!(random_subspace(4, 4, 99, 3).unwrap(), Subspace::full(4));
        assert_eq!(
            random_subspace(5, 2, 7, 3).unwrap(),
            random_subspace(5, 2, 7, 3).unwrap()
        );
        assert_eq!(random_subspace(5, 2, 7, 3).unwrap().dim(), 2);
        assert!(matches!(random_subspace(3, 1, 0, 0), Err(Error::SamplingFailed(_))));
        assert!(random_subspace(2, 3, 0, 1).is_err());
    }

    #[test]
    fn distributivity_fails_for_three_lines_in_a_plane() {
        let q = span(2, "1 0");
        let r = span(2, "0 1");
        let p = span(2, "1 1");
        let lhs = p.join(&q.meet(&r).unwrap()).unwrap();
        let rhs = p.join(&q).unwrap().meet(&p.join(&r).unwrap()).unwrap();
        assert_eq!(lhs, p);
        assert_eq!(rhs, Subspace::full(2));
    }

    #[test]
    fn fixture_round_trip_and_errors() {
        let p = span(3, "1 1/2 0\n0 0 1*i");
        assert_eq!(Subspace::parse_fixture(&p.to_fixture()).unwrap(), p);
        assert_eq!(Subspace::parse_fixture("# zero\n2\n").unwrap(), Subspace::zero(2));
        let err = Subspace::parse_fixture("2\n1 0\n0 q").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 3,
                message: "malformed scalar `q`".into()
            }
        );
        assert!(Subspace::parse_fixture("two\n1 0").is_err());
        assert!(Subspace::parse_fixture("3\n1 0").is_err());
    }

    fn arb_subspace(n: usize) -> impl Strategy<Value = Subspace> {
        (0..=n, any::<u64>()).prop_map(move |(d, seed)| random_subspace(n, d, seed, 2).unwrap())
    }

    fn arb_pair() -> impl Strategy<Value = (Subspace, Subspace)> {
        (2usize..=4).prop_flat_map(|n| (arb_subspace(n), arb_subspace(n)))
    }

    proptest! {
        #[test]
        fn de_morgan_and_involution((p, q) in arb_pair()) {
            prop_assert_eq!(p.complement().complement(), p.clone());
            prop_assert_eq!(p.meet(&q).unwrap().complement(), p.complement().join(&q.complement()).unwrap());
            prop_assert_eq!(p.join(&q).unwrap().complement(), p.complement().meet(&q.complement()).unwrap());
            prop_assert!(p.meet(&p.complement()).unwrap().is_zero());
            prop_assert_eq!(p.complement().dim(), p.ambient() - p.dim());
        }

        #[test]
        fn dimension_formula((p, q) in arb_pair()) {
            prop_assert_eq!(p.join(&q).unwrap().dim() + p.meet(&q).unwrap().dim(), p.dim() + q.dim());
        }

        #[test]
        fn both_meet_routes_agree((p, q) in arb_pair()) {
            prop_assert_eq!(p.meet(&q).unwrap(), p.meet_de_morgan(&q).unwrap());
        }

        #[test]
        fn meet_is_contained_in_both((p, q) in arb_pair()) {
            let m = p.meet(&q).unwrap();
            prop_assert!(m.leq(&p).unwrap() && m.leq(&q).unwrap());
            for row in m.basis().row_iter() {
                prop_assert!(p.contains(row).unwrap() && q.contains(row).unwrap());
            }
        }
    }
}
