//! Runs every available route on one input and cross-checks the results.

use serde::Serialize;

use crate::convert::{convert, Representation, Route, SystemVector};
use crate::dependent::OrderDistribution;
use crate::dual::{
    dual_domination, dual_domination_from_signature, dual_domination_from_tail, dual_polynomial,
    pathcount_generating_function, pathcount_generating_function_via_dual,
    signature_from_dual_domination, tail_from_dual_domination,
};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::oracle::{
    boland_signature, path_set_counts, permutation_signature, BOLAND_CAP, PERMUTATION_CAP,
};
use crate::poly_route::{
    derivative_from_signature_closed, derivative_from_signature_reflect,
    derivative_from_signature_table, is_full_degree, polynomial_from_signature,
    polynomial_from_tail_bernstein, polynomial_from_tail_reflect, polynomial_from_tail_table,
    signature_from_polynomial, signature_via_integral, tail_from_polynomial, tail_via_integral,
};
use crate::signature::{
    check_generating_identity, domination_from_phi, domination_from_signature,
    domination_from_signature_closed, domination_from_tail, domination_from_tail_closed,
    signature_from_domination, signature_from_domination_closed, signature_from_tail,
    tail_from_domination, tail_from_domination_closed, tail_from_phi, DominationVector,
};
use crate::structure::{
    diagonal_section, dual_structure, mobius_transform, phi_vector, StructureFunction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub subject: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn new(n: usize, subject: &'static str, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.status != Status::Fail);
        VerifyReport {
            n,
            subject,
            passed,
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// First index where the two vectors differ, as a human-readable dump.
fn first_difference(expected: &[Rational], found: &[Rational]) -> Option<String> {
    if expected.len() != found.len() {
        return Some(format!(
            "length differs: expected {}, found {}",
            expected.len(),
            found.len()
        ));
    }
    expected
        .iter()
        .zip(found)
        .position(|(a, b)| a != b)
        .map(|i| format!("index {i}: expected {}, found {}", expected[i], found[i]))
}

struct Checks {
    list: Vec<Check>,
}

impl Checks {
    fn push(&mut self, name: &str, status: Status, detail: Option<String>) {
        self.list.push(Check {
            name: name.to_string(),
            status,
            detail,
        });
    }

    fn compare(&mut self, name: &str, expected: &[Rational], found: Result<Vec<Rational>>) {
        match found {
            Ok(found) => match first_difference(expected, &found) {
                None => self.push(name, Status::Pass, None),
                Some(detail) => self.push(name, Status::Fail, Some(detail)),
            },
            Err(e) => self.push(name, Status::Fail, Some(e.to_string())),
        }
    }

    fn holds(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.push(name, Status::Pass, None);
        } else {
            self.push(name, Status::Fail, Some(detail()));
        }
    }

    fn skip(&mut self, name: &str, reason: String) {
        self.push(name, Status::Skipped, Some(reason));
    }
}

/// Cross-checks a structure function. Oracles run for `n ≤ cap`; larger
/// systems are refused.
pub fn verify_system(phi: &StructureFunction, cap: usize) -> Result<VerifyReport> {
    let n = phi.n();
    let cap = cap.min(BOLAND_CAP);
    if n > cap {
        return Err(Error::SizeCap {
            what: "verification input",
            n,
            cap,
        });
    }
    phi.validate_semicoherent()?;

    let counts = phi_vector(phi);
    let tail = tail_from_phi(&counts)?;
    let s = signature_from_tail(&tail);
    let h = diagonal_section(&mobius_transform(phi)).with_degree_bound(n)?;
    let d = DominationVector::new(h.coeffs().to_vec())?;
    let values = |v: &[Rational]| v.to_vec();

    let mut c = Checks { list: Vec::new() };
    c.compare(
        "domination: Möbius diagonal = transform of path counts",
        d.values(),
        domination_from_phi(&counts).map(|x| values(x.values())),
    );
    c.compare(
        "tail: difference table from domination",
        tail.values(),
        Ok(values(tail_from_domination(&d).values())),
    );
    c.compare(
        "tail: closed form from domination",
        tail.values(),
        Ok(values(tail_from_domination_closed(&d).values())),
    );
    c.compare(
        "domination: difference table from tail",
        d.values(),
        Ok(values(domination_from_tail(&tail).values())),
    );
    c.compare(
        "domination: closed form from tail",
        d.values(),
        Ok(values(domination_from_tail_closed(&tail).values())),
    );
    c.compare(
        "domination: difference table from signature",
        d.values(),
        Ok(values(domination_from_signature(&s).values())),
    );
    c.compare(
        "domination: closed form from signature",
        d.values(),
        Ok(values(domination_from_signature_closed(&s).values())),
    );
    c.compare(
        "signature: difference table from domination",
        s.values(),
        Ok(values(signature_from_domination(&d).values())),
    );
    c.compare(
        "signature: closed form from domination",
        s.values(),
        Ok(values(signature_from_domination_closed(&d).values())),
    );
    c.compare(
        "signature: reflected shift of h'",
        s.values(),
        signature_from_polynomial(&h, n).map(|x| values(x.values())),
    );
    c.compare(
        "signature: integral generating function",
        s.values(),
        signature_via_integral(&h, n).map(|x| values(x.values())),
    );
    c.compare(
        "tail: reflected shift of h",
        tail.values(),
        tail_from_polynomial(&h, n).map(|x| values(x.values())),
    );
    c.compare(
        "tail: integral generating function",
        tail.values(),
        tail_via_integral(&h, n).map(|x| values(x.values())),
    );
    c.holds(
        "signature and tail generating functions",
        check_generating_identity(&s, &tail),
        || "(1-x) * sum tail_k x^k != 1 - sum s_k x^k".into(),
    );
    c.compare(
        "polynomial: Bernstein form of tail",
        h.coeffs(),
        Ok(values(polynomial_from_tail_bernstein(&tail).coeffs())),
    );
    c.compare(
        "polynomial: operator table on tail",
        h.coeffs(),
        Ok(values(polynomial_from_tail_table(&tail).coeffs())),
    );
    c.compare(
        "polynomial: inverse reflected shift of tail",
        h.coeffs(),
        Ok(values(polynomial_from_tail_reflect(&tail).coeffs())),
    );
    c.compare(
        "polynomial: incomplete beta sum over signature",
        h.coeffs(),
        Ok(values(polynomial_from_signature(&s).coeffs())),
    );
    let dh = h.derivative();
    c.compare(
        "derivative: closed form from signature",
        dh.coeffs(),
        Ok(values(derivative_from_signature_closed(&s).coeffs())),
    );
    c.compare(
        "derivative: operator table on signature",
        dh.coeffs(),
        Ok(values(derivative_from_signature_table(&s).coeffs())),
    );
    c.compare(
        "derivative: inverse reflected shift of signature",
        dh.coeffs(),
        Ok(values(derivative_from_signature_reflect(&s).coeffs())),
    );
    c.holds(
        "full degree: signature criterion matches d_n != 0",
        is_full_degree(&s) == !num_traits::Zero::is_zero(d.signed_domination()),
        || format!("d_n = {}", d.signed_domination()),
    );

    c.compare(
        "signature: Boland oracle",
        s.values(),
        boland_signature(phi).map(|x| values(x.values())),
    );
    if n <= cap.min(PERMUTATION_CAP) {
        c.compare(
            "signature: failure-order enumeration oracle",
            s.values(),
            permutation_signature(phi, &OrderDistribution::uniform(n)).map(|x| values(x.values())),
        );
    } else {
        c.skip(
            "signature: failure-order enumeration oracle",
            format!(
                "n = {n} exceeds the enumeration cap of {}",
                cap.min(PERMUTATION_CAP)
            ),
        );
    }

    let dual_phi = dual_structure(phi);
    let dual_h = diagonal_section(&mobius_transform(&dual_phi)).with_degree_bound(n)?;
    let dual_d = dual_domination(&d)?;
    c.compare(
        "dual: domination transform = domination of dual structure",
        dual_h.coeffs(),
        Ok(values(dual_d.values())),
    );
    c.compare(
        "dual: domination from tail",
        dual_d.values(),
        dual_domination_from_tail(&tail).map(|x| values(x.values())),
    );
    c.compare(
        "dual: domination from signature",
        dual_d.values(),
        dual_domination_from_signature(&s).map(|x| values(x.values())),
    );
    c.compare(
        "dual: tail from dual domination",
        tail.values(),
        tail_from_dual_domination(&dual_d).map(|x| values(x.values())),
    );
    c.compare(
        "dual: signature from dual domination",
        s.values(),
        signature_from_dual_domination(&dual_d).map(|x| values(x.values())),
    );
    c.compare(
        "dual: 1 - h(1 - x)",
        dual_d.values(),
        Ok(values(dual_polynomial(&h).coeffs())),
    );
    c.compare(
        "dual: signature of dual structure is the reversed signature",
        &s.reversed(),
        boland_signature(&dual_phi).map(|x| values(x.values())),
    );

    let count_values: Vec<Rational> = counts.values().to_vec();
    c.compare(
        "path counts: reflected shift of h",
        &count_values,
        pathcount_generating_function(&h, n).map(|p| values(p.coeffs())),
    );
    c.compare(
        "path counts: via the dual polynomial",
        &count_values,
        pathcount_generating_function_via_dual(&h, n).map(|p| values(p.coeffs())),
    );
    c.compare(
        "path counts: direct enumeration",
        &count_values,
        path_set_counts(phi).map(|v| {
            v.into_iter()
                .map(|x| Rational::from_integer(x.into()))
                .collect()
        }),
    );

    Ok(VerifyReport::new(n, "system", c.list))
}

/// Converts a vector to every representation by every route and checks that
/// all answers agree and convert back to the input.
pub fn verify_vector(value: &SystemVector) -> VerifyReport {
    let from = value.representation();
    let mut c = Checks { list: Vec::new() };
    for to in Representation::ALL {
        let reference = match convert(value, to, None) {
            Ok(v) => v,
            Err(e) => {
                c.push(
                    &format!("{from} -> {to}"),
                    Status::Fail,
                    Some(e.to_string()),
                );
                continue;
            }
        };
        for route in Route::ALL {
            let name = format!("{from} -> {to} ({route})");
            match convert(value, to, Some(route)) {
                Ok(out) => c.compare(&name, reference.values(), Ok(out.values().to_vec())),
                Err(Error::RouteUnavailable { .. }) => c.skip(&name, "route not available".into()),
                Err(e) => c.push(&name, Status::Fail, Some(e.to_string())),
            }
        }
        c.compare(
            &format!("{from} -> {to} -> {from}"),
            value.values(),
            convert(&reference, from, None).map(|v| v.values().to_vec()),
        );
    }
    VerifyReport::new(value.n(), "vector", c.list)
}
