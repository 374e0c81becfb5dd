use std::fmt;

use crate::algebra::RationalFunction;

/// Label of an unknown `Φ_color^{[index]}(1, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unknown {
    pub color: usize,
    pub index: Vec<u32>,
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.index.iter().map(u32::to_string).collect();
        write!(f, "Phi_{}^[{}](1,t)", self.color + 1, idx.join(","))
    }
}

/// `g_{i,j}^{(r)}` before evaluation at `z = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSum {
    pub from: usize,
    pub to: usize,
    pub index: Vec<u32>,
    pub func: RationalFunction,
}

/// Every intermediate object of one derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTrace {
    /// `h_i(z, t)` per color.
    pub h_funcs: Vec<RationalFunction>,
    pub g_funcs: Vec<KernelSum>,
    pub unknowns: Vec<Unknown>,
    /// `I − A(t)`, rows and columns in `unknowns` order.
    pub system_matrix: Vec<Vec<RationalFunction>>,
    pub rhs: Vec<RationalFunction>,
    pub solution: Vec<RationalFunction>,
    pub determinant: RationalFunction,
    pub result: RationalFunction,
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.h_funcs.iter().enumerate() {
            writeln!(f, "h_{} = {h}", i + 1)?;
        }
        for g in &self.g_funcs {
            let idx: Vec<String> = g.index.iter().map(u32::to_string).collect();
            writeln!(
                f,
                "g_{},{}^({}) = {}",
                g.from + 1,
                g.to + 1,
                idx.join(","),
                g.func
            )?;
        }
        writeln!(f, "unknowns:")?;
        for (k, u) in self.unknowns.iter().enumerate() {
            writeln!(f, "  x{} = {u}", k + 1)?;
        }
        writeln!(f, "system (I - A) x = H:")?;
        for (row, b) in self.system_matrix.iter().zip(&self.rhs) {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}] | {b}", cells.join(", "))?;
        }
        writeln!(f, "det = {}", self.determinant)?;
        for (u, x) in self.unknowns.iter().zip(&self.solution) {
            writeln!(f, "{u} = {x}")?;
        }
        Ok(())
    }
}
