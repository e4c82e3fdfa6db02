//! Hodge numbers of the torus `T = C^3 / lattice`, of its quotient by a
//! diagonal `(Z/2)^k` action, and of the blow-up along elliptic curves.
//!
//! Generators are ordered `(dt, dz1, dz2, dt', dz1', dz2')` where the primed
//! ones are the conjugates. A group element is a sign vector on these six
//! generators; translations act trivially on the cohomology of a torus, so
//! only the linear part enters.

use std::fmt;

use crate::error::{Error, Result};

pub type Signs = [i8; 6];

/// `iota[t, z1, z2] = [t + tau, -z1, -z2]` on forms.
pub const IOTA: Signs = [1, -1, -1, 1, -1, -1];
/// `kappa[t, z1, z2] = [-t, z1, -z2]` on forms.
pub const KAPPA: Signs = [-1, 1, -1, -1, 1, -1];
pub const IDENTITY: Signs = [1; 6];

/// Number of exceptional curves `N_{k,l}`, `0 <= k, l <= 3`.
pub const EXCEPTIONAL_CURVES: usize = 16;

/// `(p, q)`-indexed table of dimensions, `0 <= p, q <= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BigradedDims {
    dims: [[u64; 4]; 4],
}

impl BigradedDims {
    pub fn from_matrix(dims: [[u64; 4]; 4]) -> Self {
        BigradedDims { dims }
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.dims[p][q]
    }

    /// Like [`get`](Self::get) but zero outside `0..=3`.
    pub fn get_signed(&self, p: isize, q: isize) -> u64 {
        if (0..4).contains(&p) && (0..4).contains(&q) {
            self.dims[p as usize][q as usize]
        } else {
            0
        }
    }

    pub fn matrix(&self) -> [[u64; 4]; 4] {
        self.dims
    }

    /// `b_k = sum_{p+q=k} h^{p,q}` for `k = 0..=6`.
    pub fn betti(&self) -> [u64; 7] {
        let mut b = [0; 7];
        for p in 0..4 {
            for q in 0..4 {
                b[p + q] += self.dims[p][q];
            }
        }
        b
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti()
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 0 { *b as i64 } else { -(*b as i64) })
            .sum()
    }

    pub fn is_hodge_symmetric(&self) -> bool {
        (0..4).all(|p| (0..4).all(|q| self.dims[p][q] == self.dims[q][p]))
    }

    pub fn is_serre_symmetric(&self) -> bool {
        (0..4).all(|p| (0..4).all(|q| self.dims[p][q] == self.dims[3 - p][3 - q]))
    }

    /// Rhombus layout: row `k` lists `h^{k,0}, h^{k-1,1}, ..., h^{0,k}`
    /// (clipped to the table), centred.
    pub fn diamond(&self) -> String {
        let width = self
            .dims
            .iter()
            .flatten()
            .map(|d| d.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for k in 0..=6usize {
            let entries: Vec<String> = (0..=k)
                .rev()
                .filter(|&p| p <= 3 && k - p <= 3)
                .map(|p| format!("{:^width$}", self.dims[p][k - p]))
                .collect();
            let indent = (4 - entries.len()) * (width + 1);
            let line = format!("{}{}", " ".repeat(indent), entries.join(&" ".repeat(width + 2)));
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BigradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.diamond())
    }
}

/// A finite group of diagonal sign actions on the six generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    elements: Vec<Signs>,
}

fn compose(a: &Signs, b: &Signs) -> Signs {
    let mut out = [0; 6];
    for k in 0..6 {
        out[k] = a[k] * b[k];
    }
    out
}

impl GroupAction {
    /// Validate an explicit element list: entries are `+-1`, the conjugate
    /// generators carry the same sign, the identity is present and the set
    /// is closed under composition.
    pub fn new(elements: Vec<Signs>) -> Result<Self> {
        let mut elements = elements;
        for g in &elements {
            if g.iter().any(|s| *s != 1 && *s != -1) {
                return Err(Error::Validation(format!(
                    "sign vector {g:?} has entries other than +-1"
                )));
            }
            if (0..3).any(|k| g[k] != g[k + 3]) {
                return Err(Error::Validation(format!(
                    "sign vector {g:?} does not act compatibly with conjugation"
                )));
            }
        }
        elements.sort();
        elements.dedup();
        if !elements.contains(&IDENTITY) {
            return Err(Error::Validation("group must contain the identity".into()));
        }
        for a in &elements {
            for b in &elements {
                if elements.binary_search(&compose(a, b)).is_err() {
                    return Err(Error::Validation(format!(
                        "element list is not closed: {a:?} * {b:?} is missing"
                    )));
                }
            }
        }
        Ok(GroupAction { elements })
    }

    /// The subgroup generated by `generators`.
    pub fn generated_by(generators: &[Signs]) -> Result<Self> {
        let mut elements = vec![IDENTITY];
        let mut frontier = vec![IDENTITY];
        while let Some(g) = frontier.pop() {
            for h in generators {
                let gh = compose(&g, h);
                if !elements.contains(&gh) {
                    elements.push(gh);
                    frontier.push(gh);
                }
            }
        }
        Self::new(elements)
    }

    pub fn trivial() -> Self {
        GroupAction {
            elements: vec![IDENTITY],
        }
    }

    /// `G = <iota, kappa>`.
    pub fn iota_kappa() -> Self {
        Self::generated_by(&[IOTA, KAPPA]).expect("iota and kappa generate a valid group")
    }

    pub fn elements(&self) -> &[Signs] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn binomial3(k: usize) -> u64 {
    [1, 3, 3, 1][k]
}

/// `h^{p,q}(T) = C(3,p) C(3,q)`.
pub fn torus_hodge() -> BigradedDims {
    let mut dims = [[0; 4]; 4];
    for (p, row) in dims.iter_mut().enumerate() {
        for (q, d) in row.iter_mut().enumerate() {
            *d = binomial3(p) * binomial3(q);
        }
    }
    BigradedDims { dims }
}

/// Elementary symmetric polynomial `e_k` of three signs: the trace of a
/// diagonal map on `Lambda^k` of a 3-dimensional space.
fn elementary_symmetric(signs: &[i8], k: usize) -> i64 {
    let s: Vec<i64> = signs.iter().map(|x| *x as i64).collect();
    match k {
        0 => 1,
        1 => s[0] + s[1] + s[2],
        2 => s[0] * s[1] + s[0] * s[2] + s[1] * s[2],
        3 => s[0] * s[1] * s[2],
        _ => 0,
    }
}

/// Dimensions of the `G`-invariant part of `Lambda^p(dt, dz1, dz2) (x)
/// Lambda^q(dt', dz1', dz2')` by averaging characters over `G`.
pub fn invariant_dims(action: &GroupAction) -> BigradedDims {
    let order = action.order() as i64;
    let mut dims = [[0; 4]; 4];
    for (p, row) in dims.iter_mut().enumerate() {
        for (q, d) in row.iter_mut().enumerate() {
            let total: i64 = action
                .elements()
                .iter()
                .map(|g| elementary_symmetric(&g[..3], p) * elementary_symmetric(&g[3..], q))
                .sum();
            debug_assert_eq!(total % order, 0, "character average must be an integer");
            *d = (total / order) as u64;
        }
    }
    BigradedDims { dims }
}

/// Same dimensions, by counting monomials `dx_I ^ dx'_J` that every group
/// element fixes.
pub fn invariant_dims_by_enumeration(action: &GroupAction) -> BigradedDims {
    let mut dims = [[0; 4]; 4];
    for holo in 0u8..8 {
        for anti in 0u8..8 {
            let fixed = action.elements().iter().all(|g| {
                let mut sign = 1i8;
                for k in 0..3 {
                    if holo & (1 << k) != 0 {
                        sign *= g[k];
                    }
                    if anti & (1 << k) != 0 {
                        sign *= g[k + 3];
                    }
                }
                sign == 1
            });
            if fixed {
                dims[holo.count_ones() as usize][anti.count_ones() as usize] += 1;
            }
        }
    }
    BigradedDims { dims }
}

/// A blow-up center of complex codimension 2, an elliptic curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupCenter {
    pub label: String,
    hodge: [[u64; 2]; 2],
}

impl BlowupCenter {
    pub fn elliptic(label: impl Into<String>) -> Self {
        BlowupCenter {
            label: label.into(),
            hodge: [[1, 1], [1, 1]],
        }
    }

    pub fn with_hodge(label: impl Into<String>, hodge: [[u64; 2]; 2]) -> Result<Self> {
        if hodge != [[1, 1], [1, 1]] {
            return Err(Error::Validation(format!(
                "center Hodge numbers {hodge:?} are not those of an elliptic curve"
            )));
        }
        Ok(BlowupCenter {
            label: label.into(),
            hodge,
        })
    }

    pub fn hodge(&self, p: isize, q: isize) -> u64 {
        if (0..2).contains(&p) && (0..2).contains(&q) {
            self.hodge[p as usize][q as usize]
        } else {
            0
        }
    }
}

/// The 16 curves `N_{k,l}`.
pub fn exceptional_centers() -> Vec<BlowupCenter> {
    (0..4)
        .flat_map(|k| (0..4).map(move |l| BlowupCenter::elliptic(format!("N_{{{k},{l}}}"))))
        .collect()
}

/// Blow-up formula for codimension-2 centers: each contributes its Hodge
/// numbers shifted by `(1, 1)`.
pub fn blowup_assemble(base: &BigradedDims, centers: &[BlowupCenter]) -> BigradedDims {
    let mut dims = base.matrix();
    for (p, row) in dims.iter_mut().enumerate() {
        for (q, d) in row.iter_mut().enumerate() {
            *d += centers
                .iter()
                .map(|c| c.hodge(p as isize - 1, q as isize - 1))
                .sum::<u64>();
        }
    }
    BigradedDims { dims }
}

/// Hodge diamond of the crepant resolution `X`: `<iota, kappa>`-invariants
/// of the torus plus the 16 exceptional contributions.
pub fn hodge_diamond_x() -> BigradedDims {
    blowup_assemble(&invariant_dims(&GroupAction::iota_kappa()), &exceptional_centers())
}
