//! Conversion between the six vector representations of a system, with a
//! selectable formula family for the steps that have more than one.
//!
//! Steps with a single formula accept every route. A requested route that no
//! chain of steps supports is an error rather than a silent fallback.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::document::VectorDocument;
use crate::dual::{
    dual_domination, dual_domination_from_signature, dual_domination_from_tail, dual_polynomial,
    pathcount_generating_function, signature_from_dual_domination, tail_from_dual_domination,
};
use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational};
use crate::poly_route::{
    derivative_from_signature_closed, derivative_from_signature_reflect,
    derivative_from_signature_table, polynomial_from_signature, polynomial_from_tail_bernstein,
    polynomial_from_tail_reflect, polynomial_from_tail_table, reliability_polynomial,
    signature_from_polynomial, signature_via_integral, tail_from_polynomial, tail_via_integral,
};
use crate::signature::{
    domination_from_phi, domination_from_signature, domination_from_signature_closed,
    domination_from_tail, domination_from_tail_closed, phi_from_domination, phi_from_tail,
    signature_from_domination, signature_from_domination_closed, signature_from_tail,
    tail_from_domination, tail_from_domination_closed, tail_from_phi, tail_from_signature,
    DominationVector, SignatureVector, TailSignature,
};
use crate::structure::PhiVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Representation {
    Signature,
    Tail,
    Domination,
    Polynomial,
    Phi,
    DualDomination,
}

impl Representation {
    pub const ALL: [Representation; 6] = [
        Representation::Signature,
        Representation::Tail,
        Representation::Domination,
        Representation::Polynomial,
        Representation::Phi,
        Representation::DualDomination,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Representation::Signature => "signature",
            Representation::Tail => "tail",
            Representation::Domination => "domination",
            Representation::Polynomial => "polynomial",
            Representation::Phi => "phi",
            Representation::DualDomination => "dual-domination",
        }
    }

    /// Number of entries a vector of this kind has for `n` components.
    pub fn len(self, n: usize) -> usize {
        match self {
            Representation::Signature => n,
            _ => n + 1,
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Representation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Representation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| {
                Error::Document(format!(
                    "unknown representation `{s}`; expected one of signature, tail, domination, polynomial, phi, dual-domination"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Route {
    Closed,
    #[default]
    Table,
    Reflect,
    Integral,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Closed, Route::Table, Route::Reflect, Route::Integral];

    pub fn name(self) -> &'static str {
        match self {
            Route::Closed => "closed",
            Route::Table => "table",
            Route::Reflect => "reflect",
            Route::Integral => "integral",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| {
                Error::Document(format!(
                    "unknown route `{s}`; expected one of closed, table, reflect, integral"
                ))
            })
    }
}

/// A validated vector in one of the six representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemVector {
    Signature(SignatureVector),
    Tail(TailSignature),
    Domination(DominationVector),
    Polynomial { n: usize, h: Polynomial },
    Phi(PhiVector),
    DualDomination(DominationVector),
}

impl SystemVector {
    pub fn from_values(
        representation: Representation,
        n: usize,
        values: Vec<Rational>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::precondition("n must be at least 1"));
        }
        let expected = representation.len(n);
        if values.len() != expected {
            return Err(Error::precondition(format!(
                "a {representation} vector for n = {n} has {expected} entries, found {}",
                values.len()
            )));
        }
        Ok(match representation {
            Representation::Signature => SystemVector::Signature(SignatureVector::new(values)?),
            Representation::Tail => SystemVector::Tail(TailSignature::new(values)?),
            Representation::Domination => SystemVector::Domination(DominationVector::new(values)?),
            Representation::Polynomial => SystemVector::Polynomial {
                n,
                h: reliability_polynomial(&Polynomial::new(values), n)?,
            },
            Representation::Phi => {
                let phi = PhiVector::new(values)?;
                tail_from_phi(&phi)?;
                SystemVector::Phi(phi)
            }
            Representation::DualDomination => {
                SystemVector::DualDomination(DominationVector::dual(values)?)
            }
        })
    }

    /// Uses the document's `representation` field, or `fallback` if absent.
    /// A document naming a different representation than `fallback` is
    /// rejected.
    pub fn from_document(doc: &VectorDocument, fallback: Option<Representation>) -> Result<Self> {
        let named = doc
            .representation
            .as_deref()
            .map(Representation::from_str)
            .transpose()?;
        let representation = match (named, fallback) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Document(format!(
                    "document is a {a} vector but --from says {b}"
                )))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => {
                return Err(Error::Document(
                    "vector document has no `representation` and none was given".into(),
                ))
            }
        };
        Self::from_values(representation, doc.n, doc.values.clone())
    }

    pub fn representation(&self) -> Representation {
        match self {
            SystemVector::Signature(_) => Representation::Signature,
            SystemVector::Tail(_) => Representation::Tail,
            SystemVector::Domination(_) => Representation::Domination,
            SystemVector::Polynomial { .. } => Representation::Polynomial,
            SystemVector::Phi(_) => Representation::Phi,
            SystemVector::DualDomination(_) => Representation::DualDomination,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            SystemVector::Signature(s) => s.n(),
            SystemVector::Tail(t) => t.n(),
            SystemVector::Domination(d) | SystemVector::DualDomination(d) => d.n(),
            SystemVector::Polynomial { n, .. } => *n,
            SystemVector::Phi(phi) => phi.n(),
        }
    }

    pub fn values(&self) -> &[Rational] {
        match self {
            SystemVector::Signature(s) => s.values(),
            SystemVector::Tail(t) => t.values(),
            SystemVector::Domination(d) | SystemVector::DualDomination(d) => d.values(),
            SystemVector::Polynomial { h, .. } => h.coeffs(),
            SystemVector::Phi(phi) => phi.values(),
        }
    }

    fn signature(&self) -> &SignatureVector {
        match self {
            SystemVector::Signature(s) => s,
            _ => unreachable!("step table mismatch"),
        }
    }

    fn tail(&self) -> &TailSignature {
        match self {
            SystemVector::Tail(t) => t,
            _ => unreachable!("step table mismatch"),
        }
    }

    fn domination(&self) -> &DominationVector {
        match self {
            SystemVector::Domination(d) | SystemVector::DualDomination(d) => d,
            _ => unreachable!("step table mismatch"),
        }
    }

    fn polynomial(&self) -> (usize, &Polynomial) {
        match self {
            SystemVector::Polynomial { n, h } => (*n, h),
            _ => unreachable!("step table mismatch"),
        }
    }

    fn phi(&self) -> &PhiVector {
        match self {
            SystemVector::Phi(phi) => phi,
            _ => unreachable!("step table mismatch"),
        }
    }
}

use Representation as R;

/// Direct steps and the routes each offers; an empty list means a single
/// formula that serves every route.
const STEPS: &[(Representation, Representation, &[Route])] = &[
    (R::Signature, R::Tail, &[]),
    (R::Tail, R::Signature, &[]),
    (R::Tail, R::Domination, &[Route::Table, Route::Closed]),
    (R::Domination, R::Tail, &[Route::Table, Route::Closed]),
    (R::Signature, R::Domination, &[Route::Table, Route::Closed]),
    (R::Domination, R::Signature, &[Route::Table, Route::Closed]),
    (R::Domination, R::Polynomial, &[]),
    (R::Polynomial, R::Domination, &[]),
    (
        R::Polynomial,
        R::Signature,
        &[Route::Reflect, Route::Integral],
    ),
    (R::Polynomial, R::Tail, &[Route::Reflect, Route::Integral]),
    (
        R::Signature,
        R::Polynomial,
        &[Route::Table, Route::Closed, Route::Reflect, Route::Integral],
    ),
    (
        R::Tail,
        R::Polynomial,
        &[Route::Table, Route::Closed, Route::Reflect],
    ),
    (R::Phi, R::Domination, &[]),
    (R::Domination, R::Phi, &[]),
    (R::Phi, R::Tail, &[]),
    (R::Tail, R::Phi, &[]),
    (R::Polynomial, R::Phi, &[Route::Reflect]),
    (R::Domination, R::DualDomination, &[Route::Closed]),
    (R::DualDomination, R::Domination, &[Route::Closed]),
    (R::Tail, R::DualDomination, &[Route::Table]),
    (R::Signature, R::DualDomination, &[Route::Table]),
    (R::DualDomination, R::Tail, &[Route::Closed]),
    (R::DualDomination, R::Signature, &[Route::Closed]),
    (R::Polynomial, R::DualDomination, &[]),
];

fn step_allows(routes: &[Route], route: Option<Route>) -> bool {
    match route {
        None => true,
        Some(r) => routes.is_empty() || routes.contains(&r),
    }
}

/// The formula a step uses: the requested route, else table, else the first
/// one listed.
fn step_route(routes: &[Route], route: Option<Route>) -> Option<Route> {
    match route {
        Some(r) if routes.contains(&r) => Some(r),
        _ if routes.contains(&Route::Table) => Some(Route::Table),
        _ => routes.first().copied(),
    }
}

/// Shortest chain of steps from `from` to `to` under `route`; ties go to the
/// step listed first.
pub fn plan(
    from: Representation,
    to: Representation,
    route: Option<Route>,
) -> Result<Vec<(Representation, Representation, Option<Route>)>> {
    if from == to {
        return Ok(Vec::new());
    }
    let mut previous: [Option<usize>; 6] = [None; 6];
    let mut visited = [false; 6];
    let index = |r: Representation| Representation::ALL.iter().position(|&x| x == r).unwrap();
    visited[index(from)] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(current) = queue.pop_front() {
        for (i, &(a, b, routes)) in STEPS.iter().enumerate() {
            if a != current || visited[index(b)] || !step_allows(routes, route) {
                continue;
            }
            visited[index(b)] = true;
            previous[index(b)] = Some(i);
            queue.push_back(b);
        }
    }
    if !visited[index(to)] {
        return Err(Error::RouteUnavailable {
            route: route.unwrap_or_default().name(),
            from: from.name(),
            to: to.name(),
        });
    }
    let mut chain = Vec::new();
    let mut at = to;
    while at != from {
        let (a, b, routes) = STEPS[previous[index(at)].expect("reached nodes have a parent")];
        chain.push((a, b, step_route(routes, route)));
        at = a;
    }
    chain.reverse();
    Ok(chain)
}

fn apply_step(
    value: &SystemVector,
    to: Representation,
    route: Option<Route>,
) -> Result<SystemVector> {
    use SystemVector as V;
    let from = value.representation();
    let route = route.unwrap_or_default();
    Ok(match (from, to) {
        (R::Signature, R::Tail) => V::Tail(tail_from_signature(value.signature())),
        (R::Tail, R::Signature) => V::Signature(signature_from_tail(value.tail())),
        (R::Tail, R::Domination) => V::Domination(match route {
            Route::Closed => domination_from_tail_closed(value.tail()),
            _ => domination_from_tail(value.tail()),
        }),
        (R::Domination, R::Tail) => V::Tail(match route {
            Route::Closed => tail_from_domination_closed(value.domination()),
            _ => tail_from_domination(value.domination()),
        }),
        (R::Signature, R::Domination) => V::Domination(match route {
            Route::Closed => domination_from_signature_closed(value.signature()),
            _ => domination_from_signature(value.signature()),
        }),
        (R::Domination, R::Signature) => V::Signature(match route {
            Route::Closed => signature_from_domination_closed(value.domination()),
            _ => signature_from_domination(value.domination()),
        }),
        (R::Domination, R::Polynomial) => {
            let d = value.domination();
            V::Polynomial {
                n: d.n(),
                h: reliability_polynomial(&Polynomial::new(d.values().to_vec()), d.n())?,
            }
        }
        (R::Polynomial, R::Domination) => {
            let (_, h) = value.polynomial();
            V::Domination(DominationVector::new(h.coeffs().to_vec())?)
        }
        (R::Polynomial, R::Signature) => {
            let (n, h) = value.polynomial();
            V::Signature(match route {
                Route::Integral => signature_via_integral(h, n)?,
                _ => signature_from_polynomial(h, n)?,
            })
        }
        (R::Polynomial, R::Tail) => {
            let (n, h) = value.polynomial();
            V::Tail(match route {
                Route::Integral => tail_via_integral(h, n)?,
                _ => tail_from_polynomial(h, n)?,
            })
        }
        (R::Signature, R::Polynomial) => {
            let s = value.signature();
            let h = match route {
                Route::Closed => polynomial_from_signature(s),
                Route::Reflect => derivative_from_signature_reflect(s).antiderivative_from_zero(),
                Route::Integral => derivative_from_signature_closed(s).antiderivative_from_zero(),
                Route::Table => derivative_from_signature_table(s).antiderivative_from_zero(),
            };
            V::Polynomial {
                n: s.n(),
                h: reliability_polynomial(&h, s.n())?,
            }
        }
        (R::Tail, R::Polynomial) => {
            let t = value.tail();
            let h = match route {
                Route::Closed => polynomial_from_tail_bernstein(t),
                Route::Reflect => polynomial_from_tail_reflect(t),
                _ => polynomial_from_tail_table(t),
            };
            V::Polynomial {
                n: t.n(),
                h: reliability_polynomial(&h, t.n())?,
            }
        }
        (R::Phi, R::Domination) => V::Domination(domination_from_phi(value.phi())?),
        (R::Domination, R::Phi) => V::Phi(phi_from_domination(value.domination())),
        (R::Phi, R::Tail) => V::Tail(tail_from_phi(value.phi())?),
        (R::Tail, R::Phi) => V::Phi(phi_from_tail(value.tail())),
        (R::Polynomial, R::Phi) => {
            let (n, h) = value.polynomial();
            V::Phi(PhiVector::new(
                pathcount_generating_function(h, n)?.into_coeffs(),
            )?)
        }
        (R::Domination, R::DualDomination) | (R::DualDomination, R::Domination) => {
            let flipped = dual_domination(value.domination())?;
            if to == R::Domination {
                V::Domination(flipped)
            } else {
                V::DualDomination(flipped)
            }
        }
        (R::Tail, R::DualDomination) => V::DualDomination(dual_domination_from_tail(value.tail())?),
        (R::Signature, R::DualDomination) => {
            V::DualDomination(dual_domination_from_signature(value.signature())?)
        }
        (R::DualDomination, R::Tail) => V::Tail(tail_from_dual_domination(value.domination())?),
        (R::DualDomination, R::Signature) => {
            V::Signature(signature_from_dual_domination(value.domination())?)
        }
        (R::Polynomial, R::DualDomination) => {
            let (_, h) = value.polynomial();
            V::DualDomination(DominationVector::dual(dual_polynomial(h).into_coeffs())?)
        }
        _ => unreachable!("no direct step {from} -> {to}"),
    })
}

/// Converts `value` to `to`, following [`plan`].
pub fn convert(
    value: &SystemVector,
    to: Representation,
    route: Option<Route>,
) -> Result<SystemVector> {
    let mut current = value.clone();
    for (_, b, step) in plan(value.representation(), to, route)? {
        current = apply_step(&current, b, step)?;
    }
    Ok(current)
}
