//! Named checks over algebras loaded from presentation files.

use std::time::Instant;

use ver4_core::cat::{check_gr, check_mn2, Ver4Morphism, Ver4Object};
use ver4_core::dalgebra::TableAlgebra;
use ver4_core::dmodules::{sheaf_equalizer_check, DModule};
use ver4_core::groups::{conjugation_test, glp_points, h_points, quotient_bijection_check, ses_check, alpha2_points, g_points, n_points};
use ver4_core::linalg::{Matrix, Vector};
use ver4_core::points::{algebra_generators, compare_phit_projp, cover_check, hom_morphisms, partition_cover_check};
use ver4_core::spectra::{ideal_generated, localize, spec};
use ver4_core::{BaseField, Error};

use crate::dsl::{parse_presentation, Built, DslError, Presentation};
use crate::report::{Report, Status, Witness};

/// An algebra read from a presentation.
#[derive(Clone, Debug)]
pub struct Subject {
    pub name: String,
    pub presentation: Presentation,
    pub built: Built,
}

impl Subject {
    pub fn from_text(text: &str) -> Result<Self, DslError> {
        let presentation = parse_presentation(text)?;
        let built = presentation.build()?;
        Ok(Subject { name: presentation.name.clone(), presentation, built })
    }

    pub fn table(&self) -> Option<&TableAlgebra> {
        match &self.built {
            Built::Finite { table, .. } => Some(table),
            Built::Presented(_) => None,
        }
    }

    pub fn element(&self, text: &str) -> Result<Vector, DslError> {
        self.built.element(&self.presentation, text)
    }

    fn fmt(&self, v: &[u32]) -> String {
        self.table().map_or_else(|| format!("{v:?}"), |t| t.format(v))
    }

    fn fmt_all<'a>(&self, vs: impl IntoIterator<Item = &'a Vector>) -> Vec<String> {
        vs.into_iter().map(|v| self.fmt(v)).collect()
    }
}

/// The default catalog, as presentation files.
pub const DEFAULT_CATALOG: [(&str, &str); 8] = [
    ("one.alg", include_str!("../fixtures/one.alg")),
    ("dual.alg", include_str!("../fixtures/dual.alg")),
    ("T.alg", include_str!("../fixtures/T.alg")),
    ("Txk.alg", include_str!("../fixtures/Txk.alg")),
    ("kxk.alg", include_str!("../fixtures/kxk.alg")),
    ("symP.alg", include_str!("../fixtures/symP.alg")),
    ("symPP.alg", include_str!("../fixtures/symPP.alg")),
    ("Tu.alg", include_str!("../fixtures/Tu.alg")),
];

pub fn catalog(name: &str) -> Result<Vec<Subject>, String> {
    match name {
        "default" => DEFAULT_CATALOG
            .iter()
            .map(|(file, text)| Subject::from_text(text).map_err(|e| format!("{file}: {e}")))
            .collect(),
        other => Err(format!("unknown catalog `{other}` (available: default)")),
    }
}

pub const CHECKS: [&str; 5] = ["projaff", "ses", "glpq", "covers", "mn-gr"];

/// Run `f` and attach its wall-clock time in milliseconds.
pub fn timed(f: impl FnOnce() -> Vec<Report>) -> Vec<(Report, u64)> {
    let start = Instant::now();
    let reports = f();
    let ms = start.elapsed().as_millis() as u64;
    reports.into_iter().map(|r| (r, ms)).collect()
}

/// Run `check` on every subject in parallel; results keep subject order.
pub fn run_check(check: &str, subjects: &[Subject], seed: u64) -> Result<Vec<(Report, u64)>, String> {
    if !CHECKS.contains(&check) {
        return Err(format!("unknown check `{check}` (available: {})", CHECKS.join(", ")));
    }
    if check == "mn-gr" {
        return Ok(timed(mn_gr));
    }
    let mut out: Vec<(Report, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = subjects
            .iter()
            .map(|s| {
                scope.spawn(move || {
                    timed(|| match check {
                        "projaff" => vec![projaff(s)],
                        "ses" => vec![ses(s, seed)],
                        "glpq" => vec![glpq(s)],
                        "covers" => vec![covers(s)],
                        _ => unreachable!("checked above"),
                    })
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("check panicked")).collect()
    });
    if check == "glpq" {
        if let Some(s) = subjects.iter().find(|s| s.name == "symPP") {
            out.extend(timed(|| vec![non_normality(s, "1 + x1", "x2")]));
        }
    }
    Ok(out)
}

fn inconclusive(check: &str, s: &Subject) -> Report {
    Report::new(check, &s.name, Status::Inconclusive).message("no finite basis certified")
}

fn from_error(check: &str, s: &Subject, e: Error) -> Report {
    let status = match e {
        Error::OutOfRange(_) => Status::OutOfRange,
        _ => Status::Inconclusive,
    };
    Report::new(check, &s.name, status).message(e.to_string())
}

pub fn axioms(s: &Subject) -> Report {
    let Some(a) = s.table() else { return inconclusive("axioms", s) };
    let report = a.check_axioms();
    let mut r = Report::new("axioms", &s.name, Status::Pass)
        .count("dim", a.dim())
        .count("passed", report.results.iter().filter(|x| x.passed).count());
    if let Some(bad) = report.results.iter().find(|x| !x.passed) {
        let basis: Vec<String> = bad.witness.iter().flatten().map(|&i| s.fmt(&a.basis(i))).collect();
        r = r.verdict(false, || Witness::new(bad.axiom.name(), &s.name, basis));
    }
    r
}

pub fn spectrum(s: &Subject) -> Report {
    let Some(a) = s.table() else { return inconclusive("spec", s) };
    match spec(a) {
        Ok(points) => {
            let mut r = Report::new("spec", &s.name, Status::Pass).count("dim", a.dim()).count("points", points.len());
            for (i, p) in points.iter().enumerate() {
                r = r.witness(Witness::new(format!("point {i} idempotent"), &s.name, vec![s.fmt(&p.idempotent)]));
            }
            r
        }
        Err(e) => from_error("spec", s, e),
    }
}

/// `A_f` for an element `f` of `A^0`; errors are configuration errors.
pub fn localize_report(s: &Subject, f_text: &str) -> Result<Report, String> {
    let a = s.table().ok_or_else(|| format!("{}: no finite basis certified", s.name))?;
    let f = s.element(f_text).map_err(|e| e.to_string())?;
    let loc = localize(a, &f).map_err(|e| format!("cannot localize at `{f_text}`: {e}"))?;
    let ok = loc.algebra.check_axioms().all_pass() && loc.morphism.check().passed();
    let e = s.fmt(&loc.idempotent);
    Ok(Report::new("localize", &s.name, Status::Pass)
        .count("dim", a.dim())
        .count("localized_dim", loc.algebra.dim())
        .witness(Witness::new(format!("idempotent of A_({f_text})"), &s.name, vec![e.clone()]))
        .verdict(ok, || Witness::new("localization fails the axioms", &s.name, vec![e])))
}

/// Morphisms `from -> into`, each listed by its images of the generators of `from`.
pub fn points_report(from: &Subject, into: &Subject) -> Result<Report, String> {
    let a = from.table().ok_or_else(|| format!("{}: no finite basis certified", from.name))?;
    let b = into.table().ok_or_else(|| format!("{}: no finite basis certified", into.name))?;
    let subject = format!("{} -> {}", from.name, into.name);
    let gens = algebra_generators(a);
    let homs = match hom_morphisms(a, &gens, b) {
        Ok(h) => h,
        Err(e) => return Ok(Report::new("points", &subject, Status::OutOfRange).message(e.to_string())),
    };
    let names: Vec<String> = from.fmt_all(&gens);
    let mut r = Report::new("points", &subject, Status::Pass).count("morphisms", homs.len());
    let mut all_ok = true;
    for phi in &homs {
        all_ok &= phi.check().passed();
        let images = gens.iter().map(|g| into.fmt(&phi.apply(g))).collect();
        r = r.witness(Witness::new(format!("images of {}", names.join(", ")), &into.name, images));
    }
    Ok(r.verdict(all_ok, || Witness::new("a listed morphism fails its check", &into.name, names.clone())))
}

pub fn projaff(s: &Subject) -> Report {
    let Some(b) = s.table() else { return inconclusive("projaff", s) };
    match compare_phit_projp(b) {
        Ok(c) => {
            let mut r = Report::new("projaff", &s.name, Status::Pass)
                .count("phi_t", c.bijection.len())
                .count("proj_p", c.classes);
            for (a, _) in &c.bijection {
                r = r.witness(Witness::new("twist", &s.name, vec![s.fmt(a)]));
            }
            let bad = c.normalized.iter().find(|n| !n.agrees).and_then(|n| n.witness.clone());
            r.verdict(c.holds(), || match bad {
                Some((x, y)) => Witness::new("class with a disagreeing normalization", &s.name, s.fmt_all([&x, &y])),
                None => Witness::new("twists of a non-bijective comparison", &s.name, s.fmt_all(c.bijection.iter().map(|(a, _)| a))),
            })
        }
        Err(e) => from_error("projaff", s, e),
    }
}

/// Successful cover lifts listed in an `ses` report.
const SES_LISTED: usize = 8;

pub fn ses(s: &Subject, seed: u64) -> Report {
    let Some(b) = s.table() else { return inconclusive("ses", s) };
    let report = match ses_check(b, seed) {
        Ok(r) => r,
        Err(e) => return from_error("ses", s, e),
    };
    let alpha = alpha2_points(b);
    let mut r = Report::new("ses", &s.name, Status::Pass)
        .count("units", g_points(b).len())
        .count("kernel", n_points(b).len())
        .count("image", report.image.len())
        .count("alpha2", alpha.len())
        .count("covers", report.witnesses.len());
    let image = s.fmt_all(&report.image);
    r = r.witness(Witness::new("dlog image", &s.name, image.clone()));
    // every failed lift is listed; successful ones only up to a cap
    let failed = report.witnesses.iter().filter(|w| !w.passed());
    let listed: Vec<_> = failed.chain(report.witnesses.iter().filter(|w| w.passed()).take(SES_LISTED)).collect();
    if listed.len() < report.witnesses.len() {
        r = r.message(format!("{} of {} cover witnesses listed", listed.len(), report.witnesses.len()));
    }
    for w in listed {
        r = r.witness(Witness::new(
            if w.passed() { "lifted by a twisted cover" } else { "no valid twisted cover" },
            &s.name,
            vec![s.fmt(&w.target)],
        ));
    }
    r.verdict(report.holds(), || Witness::new("dlog image", &s.name, image))
}

pub fn glpq(s: &Subject) -> Report {
    let Some(b) = s.table() else { return inconclusive("glpq", s) };
    let (gl, h, q) = match (glp_points(b), h_points(b), quotient_bijection_check(b)) {
        (Ok(gl), Ok(h), Ok(q)) => (gl, h, q),
        (Err(e), ..) | (_, Err(e), _) | (.., Err(e)) => return from_error("glpq", s, e),
    };
    let reps: Vec<String> = gl.cosets_of(&h).iter().map(|c| s.fmt(&c.iter().next().expect("cosets are nonempty")[0])).collect();
    Report::new("glpq", &s.name, Status::Pass)
        .count("glp", gl.len())
        .count("h", h.len())
        .count("cosets", q.cosets)
        .count("unit_classes", q.unit_classes)
        .witness(Witness::new("coset representatives (first entry)", &s.name, reps.clone()))
        .verdict(q.holds(), || Witness::new("coset representatives (first entry)", &s.name, reps))
}

/// Conjugating `h = (1, w)` by `g = (a, 0)`.
pub fn non_normality(s: &Subject, a_text: &str, w_text: &str) -> Report {
    let Some(b) = s.table() else { return inconclusive("non-normality", s) };
    let (a, w) = match (s.element(a_text), s.element(w_text)) {
        (Ok(a), Ok(w)) => (a, w),
        (Err(e), _) | (_, Err(e)) => return Report::new("non-normality", &s.name, Status::Inconclusive).message(e.to_string()),
    };
    match conjugation_test(b, &a, &w) {
        Ok(n) => {
            let pair = |p: &[Vector]| s.fmt_all(p);
            Report::new("non-normality", &s.name, Status::Pass)
                .witness(Witness::new("g", &s.name, pair(&n.g)))
                .witness(Witness::new("h", &s.name, pair(&n.h)))
                .witness(Witness::new("g h g^-1", &s.name, pair(&n.conjugate)))
                .verdict(n.is_witness(), || Witness::new("obstruction (Dw)(Da)", &s.name, vec![s.fmt(&n.obstruction)]))
        }
        Err(e) => from_error("non-normality", s, e),
    }
}

/// Families of at most two elements of `A^0`: cover criteria agree, genuine
/// covers pass the partition and equalizer checks, the rest are rejected.
const COVERS_MAX_DEGREE_ZERO: usize = 5;

pub fn covers(s: &Subject) -> Report {
    let Some(a) = s.table() else { return inconclusive("covers", s) };
    let f = *a.field();
    let zero = a.degree_zero();
    if zero.dim() > COVERS_MAX_DEGREE_ZERO {
        return Report::new("covers", &s.name, Status::OutOfRange)
            .message(format!("A^0 has dimension {} > {COVERS_MAX_DEGREE_ZERO}", zero.dim()));
    }
    let elems = zero.elements(&f);
    let modules = cover_modules(a);
    let (mut families, mut good, mut rejected) = (0, 0, 0);
    for i in 0..elems.len() {
        for j in i..elems.len() {
            families += 1;
            let fam = if i == j { vec![elems[i].clone()] } else { vec![elems[i].clone(), elems[j].clone()] };
            match cover_family(s, &fam, &modules) {
                Ok(r) if r.status == Status::Pass => good += 1,
                Ok(r) if r.status == Status::NotACover => rejected += 1,
                Ok(r) => return Report { check: "covers".into(), counts: Default::default(), ..r },
                Err(e) => return from_error("covers", s, e),
            }
        }
    }
    Report::new("covers", &s.name, Status::Pass)
        .count("families", families)
        .count("covers", good)
        .count("not_covers", rejected)
}

/// Modules tested on covers: `A` itself and the free module on `P`.
pub fn cover_modules(a: &TableAlgebra) -> Vec<DModule> {
    vec![DModule::regular(a), DModule::free_on(a, &Ver4Object::projective(*a.field()))]
}

/// [`cover_family`] with errors folded into the report.
pub fn cover_family_report(s: &Subject, fam: &[Vector], modules: &[DModule]) -> Report {
    cover_family(s, fam, modules).unwrap_or_else(|e| from_error("cover", s, e))
}

/// One family: pass, not-a-cover (with a point where all members vanish), or
/// fail when a check disagrees.
pub fn cover_family(s: &Subject, fam: &[Vector], modules: &[DModule]) -> Result<Report, Error> {
    let a = s.table().ok_or(Error::Inconclusive("no finite basis".into()))?;
    let members = s.fmt_all(fam);
    let ideals: Vec<_> = fam.iter().map(|x| ideal_generated(a, std::slice::from_ref(x))).collect();
    let report = cover_check(a, &ideals)?;
    let base = Report::new("cover", &s.name, Status::Pass).count("members", fam.len());
    if !report.criteria_agree() {
        return Ok(base.verdict(false, || Witness::new("cover criteria disagree", &s.name, members)));
    }
    if !report.is_cover() {
        for m in modules {
            if !matches!(sheaf_equalizer_check(a, fam, m), Err(Error::NotACover)) {
                return Ok(base.verdict(false, || Witness::new("non-cover accepted", &s.name, members)));
            }
        }
        let points = spec(a)?;
        let common = points.iter().find(|p| fam.iter().all(|x| p.prime.contains(a.field(), x)));
        let mut r = Report::new("cover", &s.name, Status::NotACover).witness(Witness::new("family", &s.name, members));
        if let Some(p) = common {
            r = r.witness(Witness::new("common zero (point idempotent)", &s.name, vec![s.fmt(&p.idempotent)]));
        }
        return Ok(r);
    }
    let partition = partition_cover_check(a, fam);
    let mut ok = partition.passed();
    for m in modules {
        ok &= sheaf_equalizer_check(a, fam, m)?.holds();
    }
    let mut r = base;
    if let Some(gs) = &partition.partition {
        r = r.witness(Witness::new("partition of unity", &s.name, s.fmt_all(gs)));
    }
    Ok(r.verdict(ok, || Witness::new("family", &s.name, members)))
}

/// The least powers at which the socle inclusion `1 -> P` dies in `Sym^n P`
/// and at which `Sym^n P -> 1` splits.
pub fn mn_gr() -> Vec<Report> {
    const N_MAX: usize = 6;
    let f = BaseField::gf2();
    let p = Ver4Object::projective(f);
    let one = Ver4Object::unit(f);
    // v1 at index 0, v2 = D v1 spans the socle
    let soc = Ver4Morphism::new(one.clone(), p.clone(), Matrix::from_columns(f, 2, &[vec![0, 1]]));
    let eps = Ver4Morphism::new(p.clone(), one.clone(), Matrix::from_rows(f, 2, &[vec![1, 0]]));
    let (soc, eps) = match (soc, eps) {
        (Ok(s), Ok(e)) => (s, e),
        _ => return vec![Report::new("mn-gr", "P", Status::Inconclusive).message("morphisms do not commute with D")],
    };
    let mut r = Report::new("mn-gr", "P", Status::Pass);
    let mut missing = Vec::new();
    match check_mn2(&soc, N_MAX) {
        Ok(Some(n)) => r = r.count("mn", n),
        Ok(None) => missing.push("v2"),
        Err(e) => return vec![Report::new("mn-gr", "P", Status::Inconclusive).message(e.to_string())],
    }
    match check_gr(&eps, N_MAX) {
        Ok(Some(n)) => r = r.count("gr", n),
        Ok(None) => missing.push("v1"),
        Err(e) => return vec![Report::new("mn-gr", "P", Status::Inconclusive).message(e.to_string())],
    }
    vec![r.verdict(missing.is_empty(), || {
        Witness::new(format!("no answer up to n = {N_MAX}"), "P", missing.iter().map(|s| s.to_string()).collect())
    })]
}
