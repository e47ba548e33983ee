use std::fmt;

use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};

/// A monomial ideal stored by its minimal generators.
///
/// Generators are kept sorted by `(degree, exponents)` so that equal ideals
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        debug_assert!(all.iter().all(|m| m.nvars() == nvars));
        all.sort();
        all.dedup();
        // sorted by degree first, so a divisor always precedes its multiples
        let mut min: Vec<Monomial> = Vec::with_capacity(all.len());
        for m in all {
            if !min.iter().any(|g| g.divides(&m)) {
                min.push(m);
            }
        }
        MonomialIdeal { nvars, gens: min }
    }

    /// `(x_{vars.start}, ..., x_{vars.end-1})^d`, i.e. all monomials of
    /// degree `d` in the given variables.
    pub fn power_of_variables(nvars: usize, vars: std::ops::Range<usize>, d: u32) -> Self {
        Self::new(nvars, monomials_of_degree(nvars, vars, d))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when the ideal contains 1.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.iter().map(|g| g.degree()).max()
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        Self::new(self.nvars, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn with_gen(&self, m: Monomial) -> MonomialIdeal {
        Self::new(self.nvars, self.gens.iter().cloned().chain(std::iter::once(m)))
    }

    /// The colon ideal `self : x_i`.
    pub fn colon_var(&self, i: usize) -> MonomialIdeal {
        Self::new(
            self.nvars,
            self.gens.iter().map(|g| {
                let mut e = g.exps().to_vec();
                e[i] = e[i].saturating_sub(1);
                Monomial::from_exps(&e)
            }),
        )
    }

    /// Standard monomials of degree `d`, descending in degrevlex.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        self.standard_monomials_in(0..self.nvars, d)
    }

    /// Standard monomials of degree `d` supported in `vars`, descending in
    /// degrevlex.
    pub fn standard_monomials_in(&self, vars: std::ops::Range<usize>, d: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = monomials_of_degree(self.nvars, vars, d)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect();
        out.sort_by(|a, b| MonomialOrder::DegRevLex.compare(b, a));
        out
    }

    /// Per-degree counts of standard monomials in `vars` for degrees
    /// `0..=up_to`.
    pub fn count_standard(&self, vars: std::ops::Range<usize>, up_to: u32) -> Vec<usize> {
        (0..=up_to)
            .map(|d| self.standard_monomials_in(vars.clone(), d).len())
            .collect()
    }

    /// Variables dividing some minimal generator.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.gens.iter().any(|g| g.exp(i) > 0))
            .collect()
    }

    /// Generators that are pure powers of `x_i`.
    pub fn pure_power_of(&self, i: usize) -> Option<&Monomial> {
        self.gens.iter().find(|g| g.pure_power_var() == Some(i))
    }

    /// Sets `x_i = 0`: drops the generators divisible by `x_i`.
    pub fn drop_var(&self, i: usize) -> MonomialIdeal {
        MonomialIdeal {
            nvars: self.nvars,
            gens: self.gens.iter().filter(|g| g.exp(i) == 0).cloned().collect(),
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.fmt_with(names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
