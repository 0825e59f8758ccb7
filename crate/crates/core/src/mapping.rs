//! Algebraic map `r(x) = L(1+x)/(1−x+α)` from `x ∈ [-1, 1]` onto
//! `r ∈ [0, r_max]`, with `α = 2L/r_max`.

use alloc::vec::Vec;

use crate::error::{positive, Error, Result};
use crate::lgl::{lgl_nodes, LglGrid};

/// Largest |v_m| accepted at grid build; analytically it is zero.
const VM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    l: f64,
    r_max: f64,
    alpha_map: f64,
}

impl MapParams {
    pub fn new(l: f64, r_max: f64) -> Result<Self> {
        let l = positive("L", l)?;
        let r_max = positive("r_max", r_max)?;
        Ok(Self {
            l,
            r_max,
            alpha_map: 2.0 * l / r_max,
        })
    }

    /// Map scale L in bohr; half the nodes lie below `r ≈ L`.
    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn alpha_map(&self) -> f64 {
        self.alpha_map
    }

    fn denom(&self, x: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::Domain {
                name: "x",
                value: x,
                domain: "[-1, 1]",
            });
        }
        Ok(1.0 - x + self.alpha_map)
    }

    /// `L(2+α)`, the common factor of every derivative.
    fn k(&self) -> f64 {
        self.l * (2.0 + self.alpha_map)
    }
}

pub fn map_x_to_r(x: f64, map: &MapParams) -> Result<f64> {
    let d = map.denom(x)?;
    if x == 1.0 {
        // Pin the endpoint; L·2/α can be off by an ulp.
        return Ok(map.r_max);
    }
    Ok(map.l * (1.0 + x) / d)
}

/// `r'(x) = L(2+α)/(1−x+α)²`.
pub fn map_derivative(x: f64, map: &MapParams) -> Result<f64> {
    let d = map.denom(x)?;
    Ok(map.k() / (d * d))
}

/// `r''(x) = 2L(2+α)/(1−x+α)³`.
pub fn map_second_derivative(x: f64, map: &MapParams) -> Result<f64> {
    let d = map.denom(x)?;
    Ok(2.0 * map.k() / (d * d * d))
}

/// `r'''(x) = 6L(2+α)/(1−x+α)⁴`.
pub fn map_third_derivative(x: f64, map: &MapParams) -> Result<f64> {
    let d = map.denom(x)?;
    let d2 = d * d;
    Ok(6.0 * map.k() / (d2 * d2))
}

/// `v_m = (3r''² − 2r'''r')/(8r'⁴)` for arbitrary map derivatives.
pub fn vm_from_derivatives(r1: f64, r2: f64, r3: f64) -> f64 {
    let r1_2 = r1 * r1;
    (3.0 * r2 * r2 - 2.0 * r3 * r1) / (8.0 * r1_2 * r1_2)
}

/// Map correction to the potential. Identically zero for this map but
/// evaluated from the derivatives, not assumed.
pub fn compute_vm(x: f64, map: &MapParams) -> Result<f64> {
    Ok(vm_from_derivatives(
        map_derivative(x, map)?,
        map_second_derivative(x, map)?,
        map_third_derivative(x, map)?,
    ))
}

/// An LGL grid carried through the map.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedGrid {
    lgl: LglGrid,
    map: MapParams,
    r: Vec<f64>,
    rprime: Vec<f64>,
    vm: Vec<f64>,
}

impl MappedGrid {
    pub fn from_lgl(lgl: LglGrid, map: MapParams) -> Result<Self> {
        let n = lgl.order();
        let mut r = Vec::with_capacity(n + 1);
        let mut rprime = Vec::with_capacity(n + 1);
        let mut vm = Vec::with_capacity(n + 1);
        for (j, &x) in lgl.nodes().iter().enumerate() {
            r.push(map_x_to_r(x, &map)?);
            rprime.push(map_derivative(x, &map)?);
            let v = compute_vm(x, &map)?;
            if v.is_nan() || v.abs() > VM_TOLERANCE {
                return Err(Error::NumericalFailure {
                    stage: "map correction v_m",
                    index: j,
                });
            }
            vm.push(v);
        }
        Ok(Self {
            lgl,
            map,
            r,
            rprime,
            vm,
        })
    }

    pub fn lgl(&self) -> &LglGrid {
        &self.lgl
    }

    pub fn map(&self) -> &MapParams {
        &self.map
    }

    pub fn order(&self) -> usize {
        self.lgl.order()
    }

    /// Radii at all N+1 nodes, `r_0 = 0`, `r_N = r_max`.
    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn rprime(&self) -> &[f64] {
        &self.rprime
    }

    pub fn vm(&self) -> &[f64] {
        &self.vm
    }

    /// `∫ f(r) dr` by LGL quadrature with the `r'` Jacobian; `values` are
    /// nodal samples at all N+1 nodes.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        values
            .iter()
            .zip(self.lgl.weights())
            .zip(&self.rprime)
            .map(|((f, w), rp)| f * w * rp)
            .sum()
    }
}

pub fn make_grid(order: usize, map: &MapParams) -> Result<MappedGrid> {
    MappedGrid::from_lgl(lgl_nodes(order)?, *map)
}
