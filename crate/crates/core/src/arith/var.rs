use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A named indeterminate.
///
/// Names are interned for the life of the process, so `Var` is `Copy`.
/// Ordering is the global variable order: `d < l < m < n < a`, then every
/// other name lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Var(&'static str);

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static NAMES: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    NAMES.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Var {
    pub fn new(name: &str) -> Var {
        let mut names = interner().lock().expect("variable interner poisoned");
        if let Some(&s) = names.get(name) {
            return Var(s);
        }
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        names.insert(leaked);
        Var(leaked)
    }

    pub fn name(self) -> &'static str {
        self.0
    }

    fn rank(self) -> u8 {
        match self.0 {
            "d" => 0,
            "l" => 1,
            "m" => 2,
            "n" => 3,
            "a" => 4,
            _ => 5,
        }
    }

    /// ∂
    pub fn d() -> Var {
        Var::new("d")
    }
    /// λ
    pub fn l() -> Var {
        Var::new("l")
    }
    /// μ
    pub fn m() -> Var {
        Var::new("m")
    }
    /// ν
    pub fn n() -> Var {
        Var::new("n")
    }
    /// α
    pub fn a() -> Var {
        Var::new("a")
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.0.cmp(other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}
