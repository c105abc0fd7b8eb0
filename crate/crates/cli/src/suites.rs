use std::collections::BTreeSet;
use std::sync::OnceLock;

use coxkit::arith::units;
use coxkit::gensets::{
    check_regular_generating_set, coxeter_graph_of, generating_reflections,
    orderings_regularity_profile, profile_is_zeta_or_inverse,
    verify_generalized_coxeter_presentation, GensetCriterion, GensetSearch, DEFAULT_SEARCH_BUDGET,
};
use coxkit::hurwitz::{
    hurwitz_move, hurwitz_orbit, hurwitz_transitive, reduced_factorizations, Move,
};
use coxkit::invariants::{
    catalan_number, field_of_definition, gw_matches_lemma, phi, phi_w, regular_numbers, FieldData,
};
use coxkit::noncrossing::{
    absolute_lengths, is_lattice, is_self_dual, leq_abs, nc_interval, poset_isomorphic,
    rank_sizes_palindromic, LengthTable, NCLattice,
};
use coxkit::regularity::{
    charpoly_field_check, check_simply_transitive, coxeter_elements, eigenvalue_of_order_h,
    galois_action_on_classes, is_coxeter_element, is_regular_for, powering_is_transitive,
    primitive_powers_of_regular, regular_classes, springer_checks, RegularClassSet, Root,
};
use coxkit::{Error, Group, Result};
use serde_json::{json, Value};

use crate::report::{Check, Invariants, IsomorphismVerdict, PosetExport};

/// Groups up to this order get per-element scans; larger ones per class.
pub const EXHAUSTIVE_LIMIT: usize = 1200;
/// Groups up to this order get brute-force partial-order axioms.
const ORDER_AXIOM_LIMIT: usize = 240;
const WELL_GENERATION_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Coxeter,
    Galois,
    Nc,
    Hurwitz,
    Gensets,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Coxeter => "coxeter",
            Suite::Galois => "galois",
            Suite::Nc => "nc",
            Suite::Hurwitz => "hurwitz",
            Suite::Gensets => "gensets",
        }
    }
}

/// A group together with lazily computed derived data.
pub struct Context {
    pub group: Group,
    pub field: FieldData,
    pub regular_numbers: Vec<u64>,
    pub irreducible: bool,
    pub well_generating_set: Option<Vec<usize>>,
    lengths: OnceLock<LengthTable>,
    coxeter: OnceLock<Result<RegularClassSet>>,
}

impl Context {
    pub fn new(group: Group) -> Result<Context> {
        let table = &group.table;
        let field = field_of_definition(table);
        let regular_numbers = regular_numbers(table);
        let irreducible = table.is_irreducible();
        let well_generating_set = if irreducible {
            generating_reflections(table, WELL_GENERATION_BUDGET)?
        } else {
            None
        };
        Ok(Context {
            group,
            field,
            regular_numbers,
            irreducible,
            well_generating_set,
            lengths: OnceLock::new(),
            coxeter: OnceLock::new(),
        })
    }

    fn h(&self) -> u64 {
        self.group.h()
    }

    pub fn well_generated(&self) -> bool {
        self.well_generating_set.is_some()
    }

    pub fn lengths(&self) -> &LengthTable {
        self.lengths
            .get_or_init(|| absolute_lengths(&self.group.table))
    }

    /// Regular classes of order `h`; an error when `h` is not regular.
    pub fn coxeter_classes(&self) -> Result<&RegularClassSet> {
        self.coxeter
            .get_or_init(|| regular_classes(&self.group.table, &self.group.degrees, self.h()))
            .as_ref()
            .map_err(|e| Error::Integrity(e.to_string()))
    }

    pub fn invariants(&self) -> Invariants {
        let t = &self.group.table;
        let d = &self.group.degrees;
        Invariants {
            rank: t.rank(),
            order: t.order(),
            reflections: t.reflections().len(),
            hyperplanes: t.hyperplanes().len(),
            conjugacy_classes: t.classes().len(),
            degrees: d.degrees.clone(),
            exponents: d.exponents.clone(),
            coxeter_number: d.coxeter_number,
            ambient_conductor: self.field.ambient_conductor,
            field_degree: self.field.field_degree,
            regular_numbers: self.regular_numbers.clone(),
            irreducible: self.irreducible,
            well_generated: self.well_generated(),
            coxeter_classes: self
                .h_is_regular()
                .then(|| self.coxeter_classes().ok().map(RegularClassSet::len))
                .flatten(),
        }
    }

    fn h_is_regular(&self) -> bool {
        self.irreducible && self.regular_numbers.contains(&self.h())
    }

    /// Why `suite` cannot run on this group, if it cannot.
    pub fn inapplicable(&self, suite: Suite) -> Option<String> {
        if !self.irreducible {
            return Some("group is reducible".into());
        }
        match suite {
            Suite::Galois if !self.h_is_regular() => {
                Some("largest degree is not a regular number".into())
            }
            Suite::Coxeter | Suite::Nc | Suite::Hurwitz | Suite::Gensets
                if !self.well_generated() =>
            {
                Some("group is not well-generated".into())
            }
            _ => None,
        }
    }

    /// Elements scanned by per-element checks.
    fn scan_elements(&self) -> Vec<usize> {
        let t = &self.group.table;
        if t.order() <= EXHAUSTIVE_LIMIT {
            (0..t.order()).collect()
        } else {
            t.classes().representatives().collect()
        }
    }
}

pub fn run(ctx: &Context, suite: Suite) -> Result<Vec<Check>> {
    let suites = match suite {
        Suite::All => vec![
            Suite::Coxeter,
            Suite::Galois,
            Suite::Nc,
            Suite::Hurwitz,
            Suite::Gensets,
        ],
        one => {
            if let Some(reason) = ctx.inapplicable(one) {
                return Err(Error::Usage(format!(
                    "suite {} does not apply: {reason}",
                    one.name()
                )));
            }
            vec![one]
        }
    };
    let mut checks = Vec::new();
    for s in suites {
        if let Some(reason) = ctx.inapplicable(s) {
            checks.push(Check::skip(s.name(), "suite", reason));
            continue;
        }
        checks.extend(match s {
            Suite::Coxeter => coxeter_suite(ctx)?,
            Suite::Galois => galois_suite(ctx)?,
            Suite::Nc => nc_suite(ctx)?,
            Suite::Hurwitz => hurwitz_suite(ctx)?,
            Suite::Gensets => gensets_suite(ctx)?,
            Suite::All => unreachable!("expanded above"),
        });
    }
    Ok(checks)
}

fn first_failure(
    items: impl IntoIterator<Item = usize>,
    ok: impl Fn(usize) -> bool,
) -> Option<usize> {
    items.into_iter().find(|&w| !ok(w))
}

fn element_check(name: &str, suite: &'static str, failure: Option<usize>) -> Check {
    Check::new(
        suite,
        name,
        failure.is_none(),
        || json!({ "element": failure }),
    )
}

fn coxeter_suite(ctx: &Context) -> Result<Vec<Check>> {
    const S: &str = "coxeter";
    let t = &ctx.group.table;
    let d = &ctx.group.degrees;
    let h = ctx.h();
    let mut checks = Vec::new();

    let exp_sum: u64 = d.exponents.iter().sum();
    let deg_prod: u64 = d.degrees.iter().product();
    checks.push(Check::new(
        S,
        "degree_identities",
        exp_sum == t.reflections().len() as u64 && deg_prod == t.order() as u64,
        || json!({ "exponent_sum": exp_sum, "degree_product": deg_prod }),
    ));
    checks.push(Check::new(
        S,
        "largest_regular_number_is_h",
        ctx.regular_numbers.last() == Some(&h),
        || json!({ "regular_numbers": ctx.regular_numbers }),
    ));

    let elements = ctx.scan_elements();
    let scope = if elements.len() == t.order() {
        "all elements"
    } else {
        "class representatives"
    };
    let is_cox = |w| is_coxeter_element(t, d, w);
    let has_eig = |w| eigenvalue_of_order_h(t, d, w);
    checks.push(
        element_check(
            "coxeter_iff_order_h_with_eigenvalue",
            S,
            first_failure(elements.iter().copied(), |w| {
                is_cox(w) == (t.order_of(w) == h && has_eig(w))
            }),
        )
        .with_note(scope),
    );
    checks.push(
        element_check(
            "coxeter_iff_eigenvalue_of_order_h",
            S,
            first_failure(elements.iter().copied(), |w| is_cox(w) == has_eig(w)),
        )
        .with_note(scope),
    );

    let coxeter: BTreeSet<usize> = coxeter_elements(t, d).into_iter().collect();
    let powers: BTreeSet<usize> = primitive_powers_of_regular(t, d).into_iter().collect();
    let diff: Vec<usize> = coxeter.symmetric_difference(&powers).copied().collect();
    checks.push(Check::new(
        S,
        "coxeter_eq_primitive_powers_of_regular",
        diff.is_empty(),
        || json!({ "symmetric_difference": diff }),
    ));

    let classes = ctx.coxeter_classes()?;
    let mut conj_fail = None;
    let mut eig_fail = None;
    for class in &classes.classes {
        for e in &class.eigenvalues {
            let report =
                springer_checks(t, d, class.representative, Root::new(e.order, e.exponent))?;
            if !report.conjugacy_ok() && conj_fail.is_none() {
                conj_fail = Some(
                    json!({ "element": class.representative, "nonconjugate": report.nonconjugate }),
                );
            }
            if !report.eigenvalues_ok() && eig_fail.is_none() {
                eig_fail = Some(json!({
                    "element": class.representative,
                    "eigenvalues": report.eigenvalues,
                    "expected": report.expected_eigenvalues,
                }));
            }
        }
    }
    checks.push(Check::new(
        S,
        "springer_regular_elements_conjugate",
        conj_fail.is_none(),
        || conj_fail.clone().unwrap_or(Value::Null),
    ));
    checks.push(Check::new(
        S,
        "springer_eigenvalues",
        eig_fail.is_none(),
        || eig_fail.clone().unwrap_or(Value::Null),
    ));

    // regularity is a class property
    let mut invariance_fail = None;
    'outer: for members in &t.classes().classes {
        for k in units(h) {
            let root = Root::new(h, k);
            let base = is_regular_for(t, members[0], root);
            for &g in t.generators() {
                let conj = t.conjugate(g, members[0]);
                if is_regular_for(t, conj, root) != base {
                    invariance_fail =
                        Some(json!({ "element": members[0], "conjugator": g, "root": root }));
                    break 'outer;
                }
            }
        }
    }
    checks.push(Check::new(
        S,
        "regularity_conjugation_invariant",
        invariance_fail.is_none(),
        || invariance_fail.clone().unwrap_or(Value::Null),
    ));
    Ok(checks)
}

fn galois_suite(ctx: &Context) -> Result<Vec<Check>> {
    const S: &str = "galois";
    let t = &ctx.group.table;
    let d = &ctx.group.degrees;
    let h = ctx.h();
    let field = &ctx.field;
    let mut checks = Vec::new();

    checks.push(Check::new(
        S,
        "largest_degree_regular",
        ctx.regular_numbers.contains(&h),
        || json!({ "regular_numbers": ctx.regular_numbers }),
    ));
    let pw = phi_w(h, &d.exponents);
    let predicted = phi(h) / pw.max(1);
    let formula_ok = pw > 0 && phi(h).is_multiple_of(pw) && predicted == field.field_degree;
    checks.push(Check::new(
        S,
        "field_degree_eq_phi_over_phi_w",
        formula_ok,
        || json!({ "phi": phi(h), "phi_w": pw, "field_degree": field.field_degree }),
    ));
    let classes = ctx.coxeter_classes()?;
    checks.push(Check::new(
        S,
        "coxeter_class_count",
        classes.len() as u64 == predicted,
        || json!({ "classes": classes.len(), "predicted": predicted }),
    ));
    checks.push(Check::new(S, "powering_action_transitive", powering_is_transitive(t, classes)?, || {
        json!({ "classes": classes.classes.iter().map(|c| c.representative).collect::<Vec<_>>() })
    }));
    let free = check_simply_transitive(t, d, field)?;
    checks.push(Check::new(
        S,
        "galois_action_simply_transitive",
        free,
        || json!({ "classes": classes.len(), "field_degree": field.field_degree }),
    ));
    let charpoly_fail = classes
        .classes
        .iter()
        .map(|c| c.representative)
        .find(|&c| !charpoly_field_check(t, field, c));
    checks.push(element_check(
        "charpoly_coefficients_generate_field",
        S,
        charpoly_fail,
    ));
    checks.push(Check::new(
        S,
        "galois_stabilizer_from_exponents",
        gw_matches_lemma(&d.exponents, h),
        || json!({ "exponents": d.exponents, "h": h }),
    ));

    // every regular number: partition, count and divisibility
    let mut partition_fail = None;
    let mut count_fail = None;
    for &n in &ctx.regular_numbers {
        match regular_classes(t, d, n) {
            Ok(set) => {
                let pw = phi_w(n, &d.exponents);
                let predicted = (pw > 0 && phi(n).is_multiple_of(pw)).then(|| phi(n) / pw);
                let ok = predicted == Some(set.len() as u64)
                    && field.field_degree.is_multiple_of(set.len() as u64);
                if !ok && count_fail.is_none() {
                    count_fail =
                        Some(json!({ "d": n, "classes": set.len(), "predicted": predicted }));
                }
                for p in units(n) {
                    let perm = galois_action_on_classes(t, &set, p)?;
                    let mut seen = perm.clone();
                    seen.sort_unstable();
                    seen.dedup();
                    if seen.len() != perm.len() && partition_fail.is_none() {
                        partition_fail = Some(json!({ "d": n, "power": p, "image": perm }));
                    }
                }
            }
            Err(e) if partition_fail.is_none() => {
                partition_fail = Some(json!({ "d": n, "error": e.to_string() }));
            }
            Err(_) => {}
        }
    }
    checks.push(Check::new(
        S,
        "regular_class_partition",
        partition_fail.is_none(),
        || partition_fail.clone().unwrap_or(Value::Null),
    ));
    checks.push(Check::new(
        S,
        "regular_class_count_divides_field_degree",
        count_fail.is_none(),
        || count_fail.clone().unwrap_or(Value::Null),
    ));
    Ok(checks)
}

fn nc_lattices(ctx: &Context) -> Result<Vec<NCLattice>> {
    let t = &ctx.group.table;
    Ok(ctx
        .coxeter_classes()?
        .classes
        .iter()
        .map(|c| nc_interval(t, ctx.lengths(), c.representative))
        .collect())
}

fn nc_suite(ctx: &Context) -> Result<Vec<Check>> {
    const S: &str = "nc";
    let t = &ctx.group.table;
    let d = &ctx.group.degrees;
    let lengths = ctx.lengths();
    let catalan = catalan_number(d)?;
    let mut checks = Vec::new();
    let lattices = nc_lattices(ctx)?;
    let sizes: Vec<usize> = lattices.iter().map(NCLattice::len).collect();
    checks.push(Check::new(
        S,
        "size_eq_catalan",
        sizes.iter().all(|&s| s as u64 == catalan),
        || json!({ "sizes": sizes, "catalan": catalan }),
    ));
    if t.order() <= EXHAUSTIVE_LIMIT {
        let bad = coxeter_elements(t, d)
            .into_iter()
            .find(|&c| nc_interval(t, lengths, c).len() as u64 != catalan);
        checks.push(element_check("size_constant_over_coxeter_elements", S, bad));
    }
    let reps: Vec<usize> = lattices.iter().map(|p| p.coxeter_element).collect();
    let find =
        |f: &dyn Fn(&NCLattice) -> bool| lattices.iter().find(|p| !f(p)).map(|p| p.coxeter_element);
    checks.push(element_check("is_lattice", S, find(&is_lattice)));
    checks.push(element_check("is_self_dual", S, find(&is_self_dual)));
    checks.push(element_check(
        "rank_sizes_palindromic",
        S,
        find(&rank_sizes_palindromic),
    ));
    checks.push(element_check(
        "top_rank_is_n",
        S,
        find(&|p: &NCLattice| lengths.len(p.coxeter_element) == t.rank()),
    ));
    let non_iso = lattices
        .iter()
        .skip(1)
        .find(|p| !poset_isomorphic(&lattices[0], p));
    checks.push(Check::new(
        S,
        "isomorphic_across_classes",
        non_iso.is_none(),
        || json!({ "a": reps[0], "b": non_iso.map(|p| p.coxeter_element) }),
    ));

    let codim = |w: usize| t.rank() - t.fixed_dim(w);
    checks.push(element_check(
        "length_at_least_codimension",
        S,
        first_failure(0..t.order(), |w| lengths.len(w) >= codim(w)),
    ));
    let real = t.class_traces().iter().all(|x| x == &x.conj());
    if real {
        let bad = lattices
            .iter()
            .flat_map(|p| p.members.iter().copied())
            .find(|&w| lengths.len(w) != codim(w));
        checks.push(element_check("length_eq_codimension_on_interval", S, bad));
    }
    if t.order() <= ORDER_AXIOM_LIMIT {
        let n = t.order();
        let le = |x, y| leq_abs(t, lengths, x, y);
        let antisym = (0..n).find(|&x| (0..n).any(|y| x != y && le(x, y) && le(y, x)));
        let transitive =
            (0..n).find(|&x| (0..n).any(|y| le(x, y) && (0..n).any(|z| le(y, z) && !le(x, z))));
        let reflexive = (0..n).find(|&x| !le(x, x));
        checks.push(element_check(
            "absolute_order_is_partial_order",
            S,
            reflexive.or(antisym).or(transitive),
        ));
    }
    Ok(checks)
}

fn hurwitz_suite(ctx: &Context) -> Result<Vec<Check>> {
    const S: &str = "hurwitz";
    let t = &ctx.group.table;
    let lengths = ctx.lengths();
    let classes = ctx.coxeter_classes()?;
    let (targets, scope): (Vec<usize>, &str) = if t.rank() <= 3 && t.order() <= ORDER_AXIOM_LIMIT {
        (
            coxeter_elements(t, &ctx.group.degrees),
            "all coxeter elements",
        )
    } else {
        (
            classes.classes.iter().map(|c| c.representative).collect(),
            "class representatives",
        )
    };
    let mut bad = None;
    for &c in &targets {
        if !hurwitz_transitive(t, lengths, c)? {
            bad = Some(c);
            break;
        }
    }
    let mut checks =
        vec![element_check("transitive_on_reduced_factorizations", S, bad).with_note(scope)];

    // braid relations of the moves on one factorization
    let c = classes.classes[0].representative;
    let facts = reduced_factorizations(t, lengths, c);
    let mut braid_fail = None;
    if let Some(f) = facts.first() {
        for i in 0..f.factors.len().saturating_sub(1) {
            let undo = hurwitz_move(t, &hurwitz_move(t, f, i, Move::Forward)?, i, Move::Backward)?;
            if &undo != f {
                braid_fail =
                    Some(json!({ "factors": f.factors, "position": i, "relation": "inverse" }));
            }
            if i + 2 < f.factors.len() {
                let apply = |g, seq: &[usize]| -> Result<_> {
                    seq.iter()
                        .try_fold(g, |acc, &j| hurwitz_move(t, &acc, j, Move::Forward))
                };
                if apply(f.clone(), &[i, i + 1, i])? != apply(f.clone(), &[i + 1, i, i + 1])? {
                    braid_fail =
                        Some(json!({ "factors": f.factors, "position": i, "relation": "braid" }));
                }
            }
            for j in i + 2..f.factors.len().saturating_sub(1) {
                let ab = hurwitz_move(t, &hurwitz_move(t, f, i, Move::Forward)?, j, Move::Forward)?;
                let ba = hurwitz_move(t, &hurwitz_move(t, f, j, Move::Forward)?, i, Move::Forward)?;
                if ab != ba {
                    braid_fail = Some(
                        json!({ "factors": f.factors, "positions": [i, j], "relation": "commute" }),
                    );
                }
            }
        }
    }
    checks.push(Check::new(
        S,
        "moves_satisfy_braid_relations",
        braid_fail.is_none(),
        || braid_fail.clone().unwrap_or(Value::Null),
    ));
    let orbit = facts
        .first()
        .map(|f| hurwitz_orbit(t, f))
        .transpose()?
        .map_or(0, |o| o.len());
    let n = t.rank() as u64;
    let h = ctx.h();
    // h^n n! / |W| reduced factorizations of a Coxeter element
    let expected = (1..=n).product::<u64>() * h.pow(n as u32) / t.order() as u64;
    checks.push(Check::new(
        S,
        "factorization_count",
        facts.len() as u64 == expected && orbit == facts.len(),
        || json!({ "factorizations": facts.len(), "orbit": orbit, "expected": expected }),
    ));
    Ok(checks)
}

fn gensets_suite(ctx: &Context) -> Result<Vec<Check>> {
    const S: &str = "gensets";
    let t = &ctx.group.table;
    let d = &ctx.group.degrees;
    let h = ctx.h();
    let mut checks = Vec::new();
    let standard = ctx
        .well_generating_set
        .clone()
        .expect("suite requires well-generation");

    let report = check_regular_generating_set(t, d, &standard)?;
    checks.push(Check::new(
        S,
        "standard_set_generates",
        report.generates_w,
        || json!({ "set": standard }),
    ));
    checks.push(Check::new(
        S,
        "reflections_conjugate_to_powers",
        report.power_conjugacy_ok,
        || json!(report.witness_failures),
    ));
    checks.push(Check::new(
        S,
        "every_ordering_is_coxeter",
        report.all_orderings_coxeter,
        || json!(report.witness_failures),
    ));
    let profile = orderings_regularity_profile(t, d, &standard)?;
    checks.push(Check::new(
        S,
        "orderings_zeta_or_inverse_regular",
        profile_is_zeta_or_inverse(&profile, h),
        || json!(profile),
    ));

    if let Some(check) = d4_counterexample(ctx)? {
        checks.push(check);
    }

    let graph = coxeter_graph_of(t, &standard)?;
    let presented = match verify_generalized_coxeter_presentation(t, &standard) {
        Ok(v) => v,
        Err(Error::CapExceeded(_)) => false,
        Err(e) => return Err(e),
    };
    if !presented {
        checks.push(Check::skip(
            S,
            "generalized_coxeter_characterization",
            "standard set is not a generalized Coxeter system",
        ));
        return Ok(checks);
    }
    checks.push(Check::new(
        S,
        "standard_graph_valid",
        graph.is_valid(),
        || json!(graph),
    ));
    if t.order() > EXHAUSTIVE_LIMIT {
        checks.push(Check::skip(
            S,
            "generalized_coxeter_characterization",
            format!("search limited to groups of order at most {EXHAUSTIVE_LIMIT}"),
        ));
        return Ok(checks);
    }
    let coxeter: BTreeSet<usize> = coxeter_elements(t, d).into_iter().collect();
    let mut by_presentation =
        GensetSearch::new(t, GensetCriterion::Presentation, DEFAULT_SEARCH_BUDGET)?;
    let mut by_graph = GensetSearch::new(
        t,
        GensetCriterion::GraphOf(standard.clone()),
        DEFAULT_SEARCH_BUDGET,
    )?;
    let mut presentation_fail = None;
    let mut graph_fail = None;
    let mut rigidity_fail = None;
    for w in 0..t.order() {
        let expected = coxeter.contains(&w);
        let found = by_presentation.find(w)?;
        if found.is_some() != expected && presentation_fail.is_none() {
            presentation_fail =
                Some(json!({ "element": w, "coxeter": expected, "witness": found }));
        }
        if let Some(wit) = &found {
            let other = coxeter_graph_of(t, &wit.set)?;
            if other.isomorphism(&graph).is_none() && rigidity_fail.is_none() {
                rigidity_fail = Some(json!({ "set": wit.set, "graph": other }));
            }
        }
        if by_graph.find(w)?.is_some() != expected && graph_fail.is_none() {
            graph_fail = Some(json!({ "element": w, "coxeter": expected }));
        }
    }
    checks.push(Check::new(
        S,
        "generalized_coxeter_characterization",
        presentation_fail.is_none(),
        || presentation_fail.clone().unwrap_or(Value::Null),
    ));
    checks.push(Check::new(
        S,
        "isomorphic_generating_set_characterization",
        graph_fail.is_none(),
        || graph_fail.clone().unwrap_or(Value::Null),
    ));
    checks.push(Check::new(
        S,
        "generalized_coxeter_graphs_isomorphic",
        rigidity_fail.is_none(),
        || rigidity_fail.clone().unwrap_or(Value::Null),
    ));
    Ok(checks)
}

/// In type D4 with generators `s, t, u, v` (`u` the branch node), the set
/// `{s, t, uvu, u}` is not a regular generating set: `s uvu t u` has order 4.
fn d4_counterexample(ctx: &Context) -> Result<Option<Check>> {
    let t = &ctx.group.table;
    let d = &ctx.group.degrees;
    if d.degrees != [2, 4, 4, 6] || t.generators().len() != 4 {
        return Ok(None);
    }
    let g = t.generators();
    let graph = coxeter_graph_of(t, g)?;
    // the branch node is the generator joined to the three others
    let Some(u) = (0..4).find(|&i| (0..4).filter(|&j| graph.m[i][j] == 3).count() == 3) else {
        return Ok(None);
    };
    let leaves: Vec<usize> = (0..4).filter(|&i| i != u).collect();
    let (s, tt, v) = (g[leaves[0]], g[leaves[1]], g[leaves[2]]);
    let u = g[u];
    let uvu = t.product([u, v, u]);
    let product = t.product([s, uvu, tt, u]);
    let report = check_regular_generating_set(t, d, &[s, tt, uvu, u])?;
    let ok = t.order_of(product) == 4 && !report.all_orderings_coxeter && report.power_conjugacy_ok;
    Ok(Some(Check::new(
        "gensets",
        "d4_non_regular_generating_set",
        ok,
        || json!({ "product": product, "order": t.order_of(product), "report": report }),
    )))
}

/// Posets of every Coxeter class (or one, by position) and their pairwise
/// isomorphism verdicts.
pub fn nc_export(
    ctx: &Context,
    class: Option<usize>,
) -> Result<(Vec<PosetExport>, Vec<IsomorphismVerdict>)> {
    if let Some(reason) = ctx.inapplicable(Suite::Nc) {
        return Err(Error::Usage(format!("nc does not apply: {reason}")));
    }
    let catalan = catalan_number(&ctx.group.degrees)?;
    let lattices = nc_lattices(ctx)?;
    let chosen: Vec<usize> = match class {
        Some(k) if k >= lattices.len() => {
            return Err(Error::Usage(format!(
                "class {k} out of range: {} Coxeter classes",
                lattices.len()
            )))
        }
        Some(k) => vec![k],
        None => (0..lattices.len()).collect(),
    };
    let posets = chosen
        .iter()
        .map(|&k| {
            let p = &lattices[k];
            PosetExport {
                class: k,
                coxeter_element: p.coxeter_element,
                size: p.len(),
                catalan_number: catalan,
                rank_sizes: p.rank_sizes(),
                nodes: p
                    .members
                    .iter()
                    .zip(&p.rank)
                    .map(|(&w, &r)| [w, r])
                    .collect(),
                covers: p.covers.iter().map(|&(a, b)| [a, b]).collect(),
            }
        })
        .collect();
    let mut verdicts = Vec::new();
    for (i, &a) in chosen.iter().enumerate() {
        for &b in &chosen[i + 1..] {
            verdicts.push(IsomorphismVerdict {
                a,
                b,
                isomorphic: poset_isomorphic(&lattices[a], &lattices[b]),
            });
        }
    }
    Ok((posets, verdicts))
}
