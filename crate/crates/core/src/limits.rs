/// Environment variable that overrides the enumeration cap.
pub const MAX_SIZE_ENV: &str = "LATTICELAB_MAX_SIZE";

/// Size caps applied by constructors and enumerators.
///
/// Every search in the crate is exhaustive, so these bound worst-case work
/// rather than memory alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest lattice accepted from external input or by `direct_product`.
    pub max_lattice: usize,
    /// Largest domain or codomain handed to `enumerate_linmors`.
    pub max_enumeration: usize,
    /// Largest monoid materialized by closure or enumeration.
    pub max_monoid: usize,
    /// Largest abelian group accepted by the module bridge.
    pub max_group_order: u64,
    /// Largest subgroup lattice the bridge will build.
    pub max_subgroups: usize,
    /// Largest endomorphism ring whose induced monoid is materialized.
    pub max_group_endos: u128,
    /// Largest endomorphism ring scanned directly on the module side.
    pub max_module_scan: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_lattice: 64,
            max_enumeration: 20,
            max_monoid: 1 << 18,
            max_group_order: 64,
            max_subgroups: 1024,
            max_group_endos: 1 << 18,
            max_module_scan: 1 << 26,
        }
    }
}

impl Limits {
    /// Defaults, with the enumeration cap taken from `LATTICELAB_MAX_SIZE`
    /// when set. A larger value also lifts the lattice cap.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(MAX_SIZE_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
        {
            limits = limits.with_max_size(v);
        }
        limits
    }

    /// Overrides the enumeration cap; the lattice cap never drops below it.
    pub fn with_max_size(mut self, size: usize) -> Self {
        self.max_enumeration = size;
        self.max_lattice = self.max_lattice.max(size);
        self
    }
}
