use smallvec::SmallVec;

pub type Shift = SmallVec<[u32; 4]>;

/// `theta^exps` applied to the unknown function with index `func`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffTerm {
    pub func: usize,
    pub exps: Shift,
}

impl DiffTerm {
    pub fn new(func: usize, exps: impl IntoIterator<Item = u32>) -> Self {
        Self {
            func,
            exps: exps.into_iter().collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn shifted(&self, beta: &[u32]) -> Self {
        Self {
            func: self.func,
            exps: self.exps.iter().zip(beta).map(|(a, b)| a + b).collect(),
        }
    }

    /// `Some(beta)` with `self = theta^beta * other`, if `other` divides `self`.
    pub fn quotient(&self, other: &DiffTerm) -> Option<Shift> {
        if self.func != other.func {
            return None;
        }
        if self.exps.iter().zip(&other.exps).any(|(a, b)| a < b) {
            return None;
        }
        Some(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn is_multiple_of(&self, other: &DiffTerm) -> bool {
        self.func == other.func && self.exps.iter().zip(&other.exps).all(|(a, b)| a >= b)
    }
}

/// The unit vector `e_var` of length `nvars`.
pub fn unit_shift(nvars: usize, var: usize) -> Shift {
    let mut s: Shift = SmallVec::from_elem(0, nvars);
    s[var] = 1;
    s
}
