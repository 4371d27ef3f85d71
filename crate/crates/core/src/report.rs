//! Serializable reports produced by the `analyze` and `dependent` commands.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dependent::{
    g_multilinear, g_polynomial, probability_signature, probability_signature_gf, probability_tail,
    q_structure, RelativeQuality,
};
use crate::document::{polynomial_strings, rational_strings, set_function_strings};
use crate::dual::{dual_domination, pathcount_generating_function};
use crate::error::Result;
use crate::exact::Polynomial;
use crate::poly_route::{is_full_degree, signature_gf, tail_gf};
use crate::signature::{signature_from_tail, tail_from_phi, DominationVector};
use crate::structure::{diagonal_section, mobius_transform, phi_vector, StructureFunction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub signature: Vec<String>,
    pub tail: Vec<String>,
    pub domination: Vec<String>,
    pub phi: Vec<String>,
    pub polynomial: Vec<String>,
    pub dual_domination: Vec<String>,
    pub signed_domination: String,
    pub full_degree: bool,
    pub pathcount_gf: Vec<String>,
    pub signature_gf: Vec<String>,
    pub tail_gf: Vec<String>,
}

pub fn analyze(phi: &StructureFunction) -> Result<AnalyzeReport> {
    phi.validate_semicoherent()?;
    let n = phi.n();
    let counts = phi_vector(phi);
    let tail = tail_from_phi(&counts)?;
    let s = signature_from_tail(&tail);
    let h = diagonal_section(&mobius_transform(phi)).with_degree_bound(n)?;
    let d = DominationVector::new(h.coeffs().to_vec())?;
    let dual = dual_domination(&d)?;
    Ok(AnalyzeReport {
        n,
        signature: rational_strings(s.values()),
        tail: rational_strings(tail.values()),
        domination: rational_strings(d.values()),
        phi: rational_strings(counts.values()),
        polynomial: polynomial_strings(&h),
        dual_domination: rational_strings(dual.values()),
        signed_domination: d.signed_domination().to_string(),
        full_degree: is_full_degree(&s),
        pathcount_gf: polynomial_strings(&pathcount_generating_function(&h, n)?),
        signature_gf: polynomial_strings(&signature_gf(&s)),
        tail_gf: polynomial_strings(&tail_gf(&tail)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependentReport {
    pub n: usize,
    pub psi: Vec<String>,
    pub c: BTreeMap<String, String>,
    pub g: Vec<String>,
    pub tail: Vec<String>,
    pub p: Vec<String>,
    pub p_gf: Vec<String>,
}

pub fn dependent(phi: &StructureFunction, q: &RelativeQuality) -> Result<DependentReport> {
    let psi = q_structure(phi, q)?;
    let c = g_multilinear(&psi);
    let g: Polynomial = g_polynomial(&psi);
    Ok(DependentReport {
        n: psi.n(),
        psi: rational_strings(&psi.level_sums()),
        c: set_function_strings(c.iter()),
        g: polynomial_strings(&g),
        tail: rational_strings(probability_tail(&psi).values()),
        p: rational_strings(probability_signature(&psi).values()),
        p_gf: polynomial_strings(&probability_signature_gf(&psi)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{structure_from_pathsets, PathSetSpec};

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn bridge_report() {
        let spec =
            PathSetSpec::new(5, &[vec![1, 4], vec![2, 5], vec![1, 3, 5], vec![2, 3, 4]]).unwrap();
        let report = analyze(&structure_from_pathsets(&spec)).unwrap();
        assert_eq!(report.signature, strings(&["0", "1/5", "3/5", "1/5", "0"]));
        assert_eq!(report.domination, strings(&["0", "0", "2", "2", "-5", "2"]));
        assert_eq!(report.dual_domination, report.domination);
        assert_eq!(report.tail, strings(&["1", "1", "4/5", "1/5", "0", "0"]));
        assert_eq!(report.pathcount_gf, report.phi);
        assert!(report.full_degree);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with(r#"{"n":5,"signature":["0","1/5","3/5","1/5","0"]"#));
    }

    #[test]
    fn series_report() {
        let spec = PathSetSpec::new(2, &[vec![1, 2]]).unwrap();
        let report = analyze(&structure_from_pathsets(&spec)).unwrap();
        assert_eq!(report.polynomial, strings(&["0", "0", "1"]));
    }

    #[test]
    fn example_dependent_report() {
        let phi = structure_from_pathsets(&PathSetSpec::new(3, &[vec![1, 2], vec![1, 3]]).unwrap());
        let q = RelativeQuality::exchangeable(3).unwrap();
        let report = dependent(&phi, &q).unwrap();
        assert_eq!(report.p, strings(&["1/3", "2/3", "0"]));
        assert_eq!(report.psi, strings(&["0", "0", "2", "1"]));
        assert_eq!(report.c.get("1,2").map(String::as_str), Some("1"));
        assert_eq!(report.c.get("1,2,3").map(String::as_str), Some("-1"));
    }
}
