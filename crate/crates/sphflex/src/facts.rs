//! A self-check suite of known facts, each recomputed by its module and
//! compared with the expected value.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::coloring::{enumerate_nap, is_nac};
use crate::cuts::{
    admissible_cases, build_pullback_system, count_degree_table_orbits, dixon2_assignment,
    mu_system_feasible, quad_assignment, DegreeTable, K33Case, NormalCut, QuadCase, QuadDivisor,
    DIXON2_RHOMBOIDS,
};
use crate::graph::named;
use crate::motions::cda_relation_exact;

/// Outcome of one fact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactCheck {
    pub name: &'static str,
    pub computed: String,
    pub expected: String,
    pub passed: bool,
}

impl FactCheck {
    fn new(name: &'static str, computed: impl ToString, expected: impl ToString) -> Self {
        let (computed, expected) = (computed.to_string(), expected.to_string());
        Self {
            name,
            passed: computed == expected,
            computed,
            expected,
        }
    }
}

/// Whole-suite report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub facts: Vec<FactCheck>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.facts.iter().all(|f| f.passed)
    }
}

const SEARCH_LIMIT: usize = 100;

fn verdict(feasible: bool, unique: bool) -> &'static str {
    match (feasible, unique) {
        (false, _) => "infeasible",
        (true, true) => "unique",
        (true, false) => "multiple",
    }
}

fn support_string(cuts: impl IntoIterator<Item = NormalCut>) -> String {
    cuts.into_iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn orbit_count() -> FactCheck {
    FactCheck::new("degree tables modulo symmetry", count_degree_table_orbits(), 26)
}

fn admissible() -> FactCheck {
    let cases = admissible_cases();
    let reps: BTreeSet<DegreeTable> = cases.iter().map(|c| c.degrees.orbit_representative()).collect();
    let named: BTreeSet<DegreeTable> = K33Case::ALL
        .iter()
        .map(|c| c.degree_table().orbit_representative())
        .collect();
    let computed = format!("{} tables, {} orbits, named: {}", cases.len(), reps.len(), reps == named);
    FactCheck::new("admissible degree tables", computed, "25 tables, 4 orbits, named: true")
}

fn general_case() -> FactCheck {
    let eqs = build_pullback_system(
        &K33Case::General.degree_table(),
        &quad_assignment(QuadCase::General, &[]),
        &[QuadDivisor::Om],
        None,
    )
    .expect("consistent assignment");
    let r = mu_system_feasible(&eqs, SEARCH_LIMIT);
    FactCheck::new(
        "all-general quadrilaterals: mu system",
        verdict(r.is_feasible(), r.is_unique()),
        "infeasible",
    )
}

fn rhomboid_case(ty: u8) -> (String, bool) {
    let eqs = build_pullback_system(
        &K33Case::Dixon2.degree_table(),
        &dixon2_assignment(ty),
        &[QuadDivisor::Ou, QuadDivisor::Om],
        None,
    )
    .expect("consistent assignment");
    let r = mu_system_feasible(&eqs, SEARCH_LIMIT);
    let mut s = verdict(r.is_feasible(), r.is_unique()).to_string();
    if r.is_unique() {
        s.push_str(": ");
        s.push_str(&support_string(r.support(0).into_keys()));
    }
    (s, r.is_feasible())
}

fn type_one() -> FactCheck {
    let want: Vec<NormalCut> = [(1, "PQQ"), (3, "QPQ"), (5, "QQP")]
        .iter()
        .map(|&(a, p)| NormalCut::parse(a, p).expect("valid cut").merged())
        .collect();
    FactCheck::new(
        "three type-1 rhomboids: mu system",
        rhomboid_case(1).0,
        format!("unique: {}", support_string(want)),
    )
}

fn type_two() -> FactCheck {
    let rhomboids_only = build_pullback_system(
        &K33Case::Dixon2.degree_table(),
        &dixon2_assignment(2),
        &[QuadDivisor::Ou, QuadDivisor::Om],
        Some(&DIXON2_RHOMBOIDS),
    )
    .expect("consistent assignment");
    let partial = mu_system_feasible(&rhomboids_only, SEARCH_LIMIT);
    let computed = format!(
        "rhomboid equations {}, all equations {}",
        verdict(partial.is_feasible(), partial.is_unique()),
        rhomboid_case(2).0
    );
    FactCheck::new(
        "three type-2 rhomboids: mu system",
        computed,
        "rhomboid equations unique, all equations infeasible",
    )
}

fn cda_relation() -> FactCheck {
    let r = cda_relation_exact(Ratio::new(3, 5), Ratio::new(3, 4));
    FactCheck::new("a^3 e^2 + a^3 - a e^2 at (3/5, 3/4)", r, 0)
}

fn nap_implies_nac() -> FactCheck {
    let mut violations = 0;
    for (_, g) in named::corpus() {
        let set = enumerate_nap(&g, false).expect("corpus graphs are small");
        violations += set.colorings.iter().filter(|c| !is_nac(&g, c)).count();
    }
    FactCheck::new("NAP colorings that are not NAC (corpus)", violations, 0)
}

fn k33_count() -> FactCheck {
    let g = named::k33();
    let up_to_swap = enumerate_nap(&g, true).expect("small graph").len();
    let all = enumerate_nap(&g, false).expect("small graph").len();
    FactCheck::new("NAP colorings of K33 (modulo swap / all)", format!("{up_to_swap} / {all}"), "6 / 12")
}

/// Run every fact.
pub fn verify_suite() -> SuiteReport {
    SuiteReport {
        facts: vec![
            orbit_count(),
            admissible(),
            general_case(),
            type_one(),
            type_two(),
            cda_relation(),
            nap_implies_nac(),
            k33_count(),
        ],
    }
}
