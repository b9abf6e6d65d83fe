use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Caps on every exhaustive computation. Exceeding one is an error, never a
/// silent truncation.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Limits {
    /// Degree cap for exhaustive permutation searches (intransitive
    /// centralizers, diagram automorphisms, subgroup closures).
    pub max_degree: usize,
    /// Largest explicit group (multiplication table) we are willing to build.
    pub group_order_cap: usize,
    /// Largest `n` for partition and character computations.
    pub max_partition_n: usize,
    /// Overrides the per-rank cap of transitive-action enumeration.
    pub max_transitive_n: Option<usize>,
    /// Degree cap of the relator-satisfying tuple oracle.
    pub oracle_max_n: usize,
    /// Generator cap of the relator-satisfying tuple oracle.
    pub oracle_max_generators: usize,
    /// Largest explicit element list produced by a subgroup closure.
    pub closure_cap: usize,
    /// Largest graph accepted by graph algorithms.
    pub max_graph_vertices: usize,
    /// Order cap of the finite abelian torsion part in subgroup counting.
    pub torsion_order_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 9,
            group_order_cap: 2000,
            max_partition_n: 40,
            max_transitive_n: None,
            oracle_max_n: 6,
            oracle_max_generators: 3,
            closure_cap: 400_000,
            max_graph_vertices: 100_000,
            torsion_order_cap: 10_000,
        }
    }
}

impl Limits {
    /// Degree cap for enumerating transitive actions of a free group of rank `m`.
    pub fn transitive_cap(&self, m: usize) -> usize {
        if let Some(n) = self.max_transitive_n {
            return n;
        }
        match m {
            0 | 1 => 16,
            2 => 7,
            3 => 5,
            4 => 4,
            _ => 3,
        }
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            return Err(Error::cap("permutation degree", n, self.max_degree));
        }
        Ok(())
    }

    pub fn check_group_order(&self, order: usize) -> Result<()> {
        if order > self.group_order_cap {
            return Err(Error::cap("group order", order, self.group_order_cap));
        }
        Ok(())
    }

    pub fn check_transitive(&self, m: usize, n: usize) -> Result<()> {
        let cap = self.transitive_cap(m);
        if n > cap {
            return Err(Error::cap("transitive enumeration degree", n, cap));
        }
        Ok(())
    }

    pub fn check_partition_n(&self, n: usize) -> Result<()> {
        if n > self.max_partition_n {
            return Err(Error::cap("partition size", n, self.max_partition_n));
        }
        Ok(())
    }
}
