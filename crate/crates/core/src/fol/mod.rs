//! Compiling first-order sentences about L(ℂⁿ) into sentences about the
//! reals: flattening, kernel encoding, and splitting into real parts.

pub mod encode;
pub mod flatten;
pub mod formula;
pub mod interp;
pub mod real;
pub mod sentence;
pub mod smtlib;
pub mod solver;

use std::fmt;

pub use encode::{encode_kernels, CPoly, ComplexSentence};
pub use flatten::{flatten, FlatAtom, FlatSentence};
pub use formula::{AtomVars, Formula};
pub use interp::{interpret_flat, interpret_source, Domain};
pub use real::{complex_to_real, Poly, RealSentence};
pub use sentence::{parse_sentence, universal_closure, LatticeAtom, LatticeSentence};
pub use smtlib::{emit_solver_text, read_script, Form};
pub use solver::{Solver, SolverVerdict};

use crate::error::Result;

/// Size of a compiled sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileStats {
    pub n: usize,
    /// Lattice variables bound in the source.
    pub lattice_vars: usize,
    /// Fresh variables added by flattening.
    pub fresh_vars: usize,
    /// Real variables standing for matrix entries, `2n²(V+F)`.
    pub matrix_reals: usize,
    /// All real variables bound anywhere.
    pub real_vars: usize,
    pub atoms: usize,
    pub max_degree: usize,
}

impl fmt::Display for CompileStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} lattice-vars={} fresh-vars={} matrix-reals={} real-vars={} atoms={} max-degree={}",
            self.n, self.lattice_vars, self.fresh_vars, self.matrix_reals, self.real_vars, self.atoms, self.max_degree
        )
    }
}

/// Every stage of one compilation.
#[derive(Clone, Debug)]
pub struct Compilation {
    pub source: LatticeSentence,
    pub flat: FlatSentence,
    pub complex: ComplexSentence,
    pub real: RealSentence,
    pub stats: CompileStats,
}

impl Compilation {
    /// Solver text with a short header naming the sentence and its size.
    pub fn solver_text(&self, form: Form) -> String {
        let header = vec![
            format!("{}", self.source),
            format!("C^{} {form} form", self.stats.n),
            self.stats.to_string(),
        ];
        emit_solver_text(&self.real, form, &header)
    }
}

pub fn compile_full(s: &LatticeSentence, n: usize) -> Result<Compilation> {
    let flat = flatten(s)?;
    let complex = encode_kernels(&flat, n)?;
    let real = complex_to_real(&complex);
    let lattice_vars = s.bound_vars().len();
    let fresh_vars = flatten::fresh_count(s, &flat);
    let atoms = real.atoms();
    let stats = CompileStats {
        n,
        lattice_vars,
        fresh_vars,
        matrix_reals: 2 * n * n * (lattice_vars + fresh_vars),
        real_vars: real.bound_vars().len(),
        atoms: atoms.len(),
        max_degree: atoms.iter().map(|p| p.degree()).max().unwrap_or(0),
    };
    Ok(Compilation {
        source: s.clone(),
        flat,
        complex,
        real,
        stats,
    })
}

/// `complex_to_real(encode_kernels(flatten(s), n))`.
pub fn compile(s: &LatticeSentence, n: usize) -> Result<RealSentence> {
    Ok(compile_full(s, n)?.real)
}
