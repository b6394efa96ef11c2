use std::cell::Cell;
use std::sync::Arc;

use super::{concat, DimSet, Domain, PartialPoint, Point, Value};
use crate::error::{Error, Result};

/// A pure function on a hypergrid. Evaluation has no side effects, so one
/// function can back any number of concurrent oracles.
pub trait HypergridFunction: Send + Sync {
    fn domain(&self) -> Domain;

    /// `x` must lie in `self.domain()`.
    fn value(&self, x: &[u32]) -> Value;
}

impl<F: HypergridFunction + ?Sized> HypergridFunction for &F {
    fn domain(&self) -> Domain {
        (**self).domain()
    }

    fn value(&self, x: &[u32]) -> Value {
        (**self).value(x)
    }
}

impl<F: HypergridFunction + ?Sized> HypergridFunction for Box<F> {
    fn domain(&self) -> Domain {
        (**self).domain()
    }

    fn value(&self, x: &[u32]) -> Value {
        (**self).value(x)
    }
}

impl<F: HypergridFunction + ?Sized> HypergridFunction for Arc<F> {
    fn domain(&self) -> Domain {
        (**self).domain()
    }

    fn value(&self, x: &[u32]) -> Value {
        (**self).value(x)
    }
}

/// Query access as seen by a tester: every `query` is one oracle call.
pub trait Oracle {
    fn domain(&self) -> Domain;

    fn query(&self, x: &[u32]) -> Value;

    /// Calls charged so far to the underlying counter.
    fn query_count(&self) -> u64;
}

impl<O: Oracle + ?Sized> Oracle for &O {
    fn domain(&self) -> Domain {
        (**self).domain()
    }

    fn query(&self, x: &[u32]) -> Value {
        (**self).query(x)
    }

    fn query_count(&self) -> u64 {
        (**self).query_count()
    }
}

/// Counts queries made to a function. One per trial; not shared across threads.
pub struct FunctionOracle<'f> {
    function: &'f dyn HypergridFunction,
    queries: Cell<u64>,
}

impl<'f> FunctionOracle<'f> {
    pub fn new(function: &'f dyn HypergridFunction) -> Self {
        FunctionOracle { function, queries: Cell::new(0) }
    }

    pub fn reset_count(&self) {
        self.queries.set(0);
    }

    pub fn function(&self) -> &'f dyn HypergridFunction {
        self.function
    }
}

impl Oracle for FunctionOracle<'_> {
    fn domain(&self) -> Domain {
        self.function.domain()
    }

    fn query(&self, x: &[u32]) -> Value {
        debug_assert!(self.function.domain().contains(x), "query {x:?} outside the domain");
        self.queries.set(self.queries.get() + 1);
        self.function.value(x)
    }

    fn query_count(&self) -> u64 {
        self.queries.get()
    }
}

/// `f_w(z) = f(z ∘_T w)`, an oracle on `[n]^|T|` that charges its parent.
pub struct Restriction<'a, O: Oracle + ?Sized> {
    parent: &'a O,
    free: DimSet,
    template: Vec<u32>,
    domain: Domain,
}

impl<O: Oracle + ?Sized> Restriction<'_, O> {
    /// The free dimensions `T` in the parent's numbering.
    pub fn free_dims(&self) -> &DimSet {
        &self.free
    }

    /// `z ∘_T w` as a point of the parent domain.
    pub fn lift(&self, z: &[u32]) -> Point {
        let mut x = self.template.clone();
        for (k, i) in self.free.iter().enumerate() {
            x[i] = z[k];
        }
        Point(x)
    }
}

impl<O: Oracle + ?Sized> Oracle for Restriction<'_, O> {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn query(&self, z: &[u32]) -> Value {
        let x = self.lift(z);
        self.parent.query(&x.0)
    }

    fn query_count(&self) -> u64 {
        self.parent.query_count()
    }
}

/// Fixes the dimensions outside `t` to `w`.
pub fn restrict<'a, O: Oracle + ?Sized>(
    parent: &'a O,
    t: &DimSet,
    w: &PartialPoint,
) -> Result<Restriction<'a, O>> {
    let outer = parent.domain();
    let z = PartialPoint::on(t, &vec![0; t.len()])?;
    let template = concat(outer.d(), t, &z, w)?;
    if let Some(c) = w.coords().into_iter().find(|&c| c >= outer.n()) {
        return Err(Error::InvalidAssignment(format!("coordinate {c} outside [{}]", outer.n())));
    }
    Ok(Restriction {
        parent,
        free: t.clone(),
        template: template.0,
        domain: Domain::subgrid(outer.n(), t.len()),
    })
}
