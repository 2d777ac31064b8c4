//! Acceptance run: one line per criterion, `[PASS]` or `[FAIL]`, with the
//! elapsed time against the pinned limit. Exits non-zero when any criterion
//! fails. Run with `cargo test -p ver4-cli --test acceptance`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode, Output};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ver4_cli::report::SCHEMA;
use ver4_cli::suite::{self, Subject, DEFAULT_CATALOG};
use ver4_core::cat::{braiding, check_gr, check_mn2, random_morphism, Ver4Morphism, Ver4Object};
use ver4_core::dalgebra::{catalog, dual_numbers, make_t, Axiom, PbwAlgebra, TableAlgebra, TableMorphism};
use ver4_core::dmodules::{sheaf_equalizer_check, DModule};
use ver4_core::groups::{
    alpha2_points, conjugation_test, cover_witness, glp_points, h_points, non_normality_witness,
    quotient_bijection_check, ses_check,
};
use ver4_core::linalg::{unit_vec, Matrix, Subspace, Vector};
use ver4_core::points::{compare_phit_projp, proj_points_bruteforce, t_points};
use ver4_core::spectra::{check_hypothesis, localize, spec};
use ver4_core::{BaseField, Error};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gf2() -> BaseField {
    BaseField::gf2()
}

/// Tables of the presentation fixtures, built once outside the timed runs.
fn fixture_tables() -> &'static Vec<(String, TableAlgebra)> {
    static TABLES: OnceLock<Vec<(String, TableAlgebra)>> = OnceLock::new();
    TABLES.get_or_init(|| {
        DEFAULT_CATALOG
            .iter()
            .map(|(file, text)| (file.to_string(), Subject::from_text(text).unwrap().table().unwrap().clone()))
            .collect()
    })
}

// ---- 1: axioms -------------------------------------------------------------

/// Three-dimensional algebra `1, a, b` with the given products of `a, b` and `D`.
fn three_dim(unit: Vector, d: Matrix, prod: [[Vector; 2]; 2]) -> TableAlgebra {
    let names = ["1", "a", "b"].map(String::from).to_vec();
    TableAlgebra::from_fn(gf2(), names, unit, d, |i, j| match (i, j) {
        (0, j) => unit_vec(3, j),
        (i, 0) => unit_vec(3, i),
        (i, j) => prod[i - 1][j - 1].clone(),
    })
    .unwrap()
}

fn negative_controls() -> Vec<(&'static str, TableAlgebra, Axiom)> {
    let f = gf2();
    let zero = vec![0, 0, 0];
    // D swaps a and b on k[a, b]/(a, b)^2
    let mut swap = Matrix::zeros(f, 3, 3);
    swap.set(2, 1, 1);
    swap.set(1, 2, 1);
    let d_squared = three_dim(vec![1, 0, 0], swap, std::array::from_fn(|_| std::array::from_fn(|_| zero.clone())));
    // D 1 = s on k[s]/s^2
    let mut d1 = Matrix::zeros(f, 2, 2);
    d1.set(1, 0, 1);
    let leibniz = TableAlgebra::from_fn(f, vec!["1".into(), "s".into()], vec![1, 0], d1, |i, j| {
        if i + j < 2 {
            unit_vec(2, i + j)
        } else {
            vec![0, 0]
        }
    })
    .unwrap();
    // k[s]/s^2 with the declared unit moved to s
    let unit = TableAlgebra::from_fn(f, vec!["1".into(), "s".into()], vec![0, 1], Matrix::zeros(f, 2, 2), |i, j| {
        if i + j < 2 {
            unit_vec(2, i + j)
        } else {
            vec![0, 0]
        }
    })
    .unwrap();
    // commutative, D = 0, a^2 = b, b^2 = b, ab = 0: (a a) b = b but a (a b) = 0
    let assoc = three_dim(
        vec![1, 0, 0],
        Matrix::zeros(f, 3, 3),
        [[vec![0, 0, 1], zero.clone()], [zero.clone(), vec![0, 0, 1]]],
    );
    // upper triangular 2x2 matrices (e11 + e22, e11, e12) with D = 0
    let upper = TableAlgebra::from_fn(
        f,
        ["1", "e11", "e12"].map(String::from).to_vec(),
        vec![1, 0, 0],
        Matrix::zeros(f, 3, 3),
        |i, j| match (i, j) {
            (0, j) => unit_vec(3, j),
            (i, 0) => unit_vec(3, i),
            (1, 1) => vec![0, 1, 0],
            (1, 2) => vec![0, 0, 1],
            _ => vec![0, 0, 0],
        },
    )
    .unwrap();
    vec![
        ("D swaps the radical", d_squared, Axiom::DSquareZero),
        ("D 1 != 0", leibniz, Axiom::Leibniz),
        ("misplaced unit", unit, Axiom::Unit),
        ("non-associative", assoc, Axiom::Associativity),
        ("upper triangular matrices", upper, Axiom::Supercommutativity),
    ]
}

fn axioms() -> Outcome {
    let mut passed = 0;
    for (name, a) in catalog().into_iter().chain(fixture_tables().iter().cloned()) {
        let r = a.check_axioms();
        ensure!(r.all_pass(), "{name} fails {:?}", r.results.iter().find(|x| !x.passed).map(|x| x.axiom.name()));
        passed += 1;
    }
    for (label, a, axiom) in negative_controls() {
        let r = a.check_axioms();
        let res = r.get(axiom);
        ensure!(!res.passed && res.witness.is_some(), "control `{label}` not caught by {}", axiom.name());
    }
    Ok(format!("{passed} algebras pass, 5 controls rejected with witnesses"))
}

// ---- 2: braiding -----------------------------------------------------------

fn braiding_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for field in [gf2(), BaseField::gf4()] {
        for k in 0..100 {
            let x = Ver4Object::random(field, rng.gen_range(1..=8), &mut rng);
            let y = Ver4Object::random(field, rng.gen_range(1..=8), &mut rng);
            let c = braiding(&x, &y).map_err(|e| e.to_string())?;
            // D-equivariance, checked directly on the matrices
            ensure!(c.matrix().mul(c.source().d()) == c.target().d().mul(c.matrix()), "pair {k}: not a morphism");
            let back = braiding(&y, &x).unwrap().compose(&c).unwrap();
            ensure!(back.matrix() == &Matrix::identity(field, x.dim() * y.dim()), "pair {k}: not involutive");
            let x2 = Ver4Object::random(field, rng.gen_range(1..=4), &mut rng);
            let y2 = Ver4Object::random(field, rng.gen_range(1..=4), &mut rng);
            let f = random_morphism(&x, &x2, &mut rng).unwrap();
            let g = random_morphism(&y, &y2, &mut rng).unwrap();
            let left = g.tensor(&f).unwrap().compose(&c).unwrap();
            let right = braiding(&x2, &y2).unwrap().compose(&f.tensor(&g).unwrap()).unwrap();
            ensure!(left.matrix() == right.matrix(), "pair {k}: not natural");
        }
    }
    let p = Ver4Object::projective(gf2());
    let pp = p.tensor(&p).unwrap().decompose();
    ensure!(pp == (0, 2), "P (x) P decomposes as {pp:?}");
    Ok("200 random pairs over GF(2), GF(4); P (x) P = (0, 2)".into())
}

// ---- 3: projective line of P against T-points ------------------------------

fn projaff() -> Outcome {
    let cases = [("1", TableAlgebra::ground(gf2()), 1), ("k[s]/s^2", dual_numbers(gf2()), 2), ("T", make_t(gf2()), 8)];
    let mut sizes = Vec::new();
    for (name, b, expected) in cases {
        let brute = proj_points_bruteforce(&b).map_err(|e| e.to_string())?.len();
        let phi = t_points(&b).len();
        ensure!(brute == expected && phi == expected, "{name}: |Phi_T| = {phi}, |P_P| = {brute}, want {expected}");
        let r = compare_phit_projp(&b).map_err(|e| e.to_string())?;
        ensure!(r.holds() && r.bijection.len() == expected, "{name}: comparison map is not a bijection");
        sizes.push(brute);
    }
    Ok(format!("sizes {sizes:?} with explicit bijections"))
}

// ---- 4: V(I) = V(A I^0) -------------------------------------------------------

fn hypothesis() -> Outcome {
    let mut ideals = 0;
    let mut algebras = 0;
    for (name, a) in catalog().into_iter().filter(|(_, a)| a.dim() <= 6) {
        let r = check_hypothesis(&a, None, 6).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.passed(), "{name}: {} ideals violate V(I) = V(A I^0)", r.failures.len());
        ideals += r.ideals_checked;
        algebras += 1;
    }
    Ok(format!("{ideals} ideals over {algebras} algebras"))
}

// ---- 5: sheaf equalizer ----------------------------------------------------

/// Whether `1` lies in the ideal `A f_1 + ... + A f_r`, by linear algebra.
fn generates_unit_ideal(a: &TableAlgebra, fam: &[Vector]) -> bool {
    let mut span = Vec::new();
    for f in fam {
        for i in 0..a.dim() {
            span.push(a.mul(&a.basis(i), f));
        }
    }
    Subspace::span(*a.field(), a.dim(), &span).contains(a.field(), &a.one())
}

fn sheaf() -> Outcome {
    let (mut covers, mut rejected) = (0, 0);
    for (name, a) in catalog() {
        let zero = a.degree_zero();
        if zero.dim() > 5 {
            continue;
        }
        let f = *a.field();
        let modules = [
            DModule::regular(&a),
            DModule::free_on(&a, &Ver4Object::projective(f)),
            DModule::free_on(&a, &Ver4Object::from_counts(f, 1, 1)),
        ];
        let elems = zero.elements(&f);
        for i in 0..elems.len() {
            for j in i..elems.len() {
                let fam = if i == j { vec![elems[i].clone()] } else { vec![elems[i].clone(), elems[j].clone()] };
                let is_cover = generates_unit_ideal(&a, &fam);
                for m in &modules {
                    match sheaf_equalizer_check(&a, &fam, m) {
                        Ok(r) => ensure!(is_cover && r.holds(), "{name} {fam:?}: equalizer {r:?}, cover {is_cover}"),
                        Err(Error::NotACover) => ensure!(!is_cover, "{name} {fam:?}: a cover was rejected"),
                        Err(e) => return Err(format!("{name} {fam:?}: {e}")),
                    }
                }
                if is_cover {
                    covers += 1;
                } else {
                    rejected += 1;
                }
            }
        }
    }
    // the same through the command-line suite
    for s in suite::catalog("default")? {
        let r = suite::covers(&s);
        ensure!(!r.status.is_failure(), "suite covers failed on {}", s.name);
    }
    Ok(format!("{covers} covers hold, {rejected} non-covers reported"))
}

// ---- 6: dlog sequence --------------------------------------------------------

fn dlog_sequence() -> Outcome {
    for (name, b) in catalog() {
        let r = ses_check(&b, 0).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.holds(), "{name}: {r:?}");
    }
    let t = make_t(gf2());
    let r = ses_check(&t, 0).unwrap();
    let alpha2 = alpha2_points(&t).len();
    ensure!(r.image.len() == 2 && alpha2 == 4, "image {} in alpha2 {alpha2}", r.image.len());
    let w = cover_witness(&t, &[0, 0, 1, 0]);
    ensure!(w.axioms && w.free_rank_two && w.lifts, "cover of t^2: {w:?}");
    ensure!(w.cover.as_ref().map(|c| c.dim()) == Some(8), "cover of t^2 is not of dimension 8");
    Ok("holds on the catalog; on T image 2 of 4; cover of t^2 verified".into())
}

// ---- 7: GL_P modulo the transporter -----------------------------------------

fn glp_quotient() -> Outcome {
    let t = make_t(gf2());
    let gl = glp_points(&t).map_err(|e| e.to_string())?.len();
    let h = h_points(&t).map_err(|e| e.to_string())?.len();
    let r = quotient_bijection_check(&t).map_err(|e| e.to_string())?;
    ensure!((gl, h) == (128, 64), "|GL_P(T)| = {gl}, |H(T)| = {h}");
    ensure!(r.cosets == 2 && r.unit_classes == 2, "cosets {} vs unit classes {}", r.cosets, r.unit_classes);
    ensure!(r.holds() && r.immersion, "{r:?}");
    Ok("128 / 64 = 2 = unit classes; t -> s is a morphism".into())
}

// ---- 8: the transporter is not normal ---------------------------------------

fn non_normality() -> Outcome {
    let w = non_normality_witness().map_err(|e| e.to_string())?;
    ensure!(w.is_witness(), "{w:?}");
    // controls: conjugating by elements of the transporter stays inside
    let p = PbwAlgebra::sym(gf2(), 2, 0, Some(2));
    let (b, basis) = p.to_table().unwrap();
    let c = |e| p.coordinates(&basis, &e).unwrap();
    let x1y1 = c(p.mul(&p.x(0), &p.y(0)).unwrap());
    let x2 = c(p.x(1));
    let inside = conjugation_test(&b, &b.add(&b.one(), &x1y1), &x2).unwrap();
    ensure!(inside.conjugate_in_transporter && !inside.is_witness(), "1 + x1 y1 moves x2 out of H");
    let t = make_t(gf2());
    let h = h_points(&t).unwrap();
    for g in &h.elements {
        for x in &h.elements {
            ensure!(h.contains(&h.conjugate(g, x).unwrap()), "H(T) is not closed under conjugation");
        }
    }
    Ok("witness in Sym(P + P) verified; controls stay in H".into())
}

// ---- 9: MN / GR ------------------------------------------------------------------

fn mn_gr() -> Outcome {
    let f = gf2();
    let (one, p) = (Ver4Object::unit(f), Ver4Object::projective(f));
    let socle = Ver4Morphism::new(one.clone(), p.clone(), Matrix::from_columns(f, 2, &[vec![0, 1]])).unwrap();
    let eps = Ver4Morphism::new(p, one, Matrix::from_rows(f, 2, &[vec![1, 0]])).unwrap();
    let mn = check_mn2(&socle, 6).map_err(|e| e.to_string())?;
    let gr = check_gr(&eps, 6).map_err(|e| e.to_string())?;
    ensure!(mn == Some(2) && gr == Some(2), "MN2 {mn:?}, GR {gr:?}");
    Ok("MN2 = 2, GR = 2".into())
}

// ---- 10: open sets and iterated localization ------------------------------------

fn localization() -> Outcome {
    let mut pairs = 0usize;
    for (name, a) in catalog() {
        let field = *a.field();
        let zero = a.degree_zero().elements(&field);
        let points: Vec<Vector> = spec(&a).map_err(|e| e.to_string())?.into_iter().map(|p| p.idempotent).collect();
        let (a0, incl0) = a.degree_zero_algebra();
        let mut loc = HashMap::new();
        let mut localized = |v: &Vector| loc.entry(v.clone()).or_insert_with(|| localize(&a, v).unwrap()).clone();

        // points surviving in A_f, computed in A and in A^0
        let mut open = Vec::new();
        let mut open0 = Vec::new();
        for f in &zero {
            let e = localized(f).idempotent;
            open.push(points.iter().filter(|i| a.mul(i, &e) == **i).cloned().collect::<BTreeSet<Vector>>());
            let f0 = a.degree_zero().coordinates(&field, f).unwrap();
            let r0 = localize(&a0, &f0).unwrap();
            open0.push(
                spec(&r0.algebra)
                    .unwrap()
                    .into_iter()
                    .map(|p| incl0.apply(&r0.inclusion.apply(&p.idempotent)))
                    .collect::<BTreeSet<Vector>>(),
            );
        }
        for i in 0..zero.len() {
            for j in 0..zero.len() {
                ensure!(
                    open[i].is_subset(&open[j]) == open0[i].is_subset(&open0[j]),
                    "{name}: inclusion of open sets differs for {:?}, {:?}",
                    zero[i],
                    zero[j]
                );
            }
        }

        // (A_f)_g against A_{fg}: the same corner of A, and the induced linear
        // map is an isomorphism of algebras. Both only depend on e_f and the
        // image of g, so each such pair is localized once.
        let mut iterated: BTreeMap<(Vector, Vector), Vector> = BTreeMap::new();
        for f in &zero {
            let af = localized(f);
            for g in &zero {
                pairs += 1;
                let fg = localized(&a.mul(f, g));
                let g_img = af.morphism.apply(g);
                let key = (af.idempotent.clone(), g_img.clone());
                if let Some(e) = iterated.get(&key) {
                    ensure!(*e == fg.idempotent, "{name}: idempotents differ for {f:?}, {g:?}");
                    continue;
                }
                let n = fg.algebra.dim();
                if af.algebra.dim() == 0 {
                    ensure!(n == 0, "{name}: A_f = 0 but A_fg != 0");
                    iterated.insert(key, a.zero());
                    continue;
                }
                let afg = localize(&af.algebra, &g_img).unwrap();
                let e = af.inclusion.apply(&afg.idempotent);
                ensure!(e == fg.idempotent, "{name}: idempotents differ for {f:?}, {g:?}");
                ensure!(afg.algebra.dim() == n, "{name}: dimensions differ");
                iterated.insert(key, e);
                if n == 0 {
                    continue;
                }
                let via = af.inclusion.mul(&afg.inclusion);
                let cols: Vec<Vector> = (0..n).map(|k| via.solve(&fg.inclusion.column(k)).unwrap()).collect();
                let m = Matrix::from_columns(field, n, &cols);
                ensure!(m.rank() == n, "{name}: not bijective");
                let phi = TableMorphism::new(fg.algebra.clone(), afg.algebra.clone(), m).unwrap();
                ensure!(phi.check().passed(), "{name}: A_fg -> (A_f)_g is not an algebra map");
            }
        }
    }
    Ok(format!("{pairs} pairs (f, g) over the catalog"))
}

// ---- 11: command line --------------------------------------------------------

fn fixture(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    dir.join(name).to_string_lossy().into_owned()
}

fn ver4(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ver4"));
    cmd.args(args);
    match seed {
        Some(s) => cmd.env("VER4_SEED", s),
        None => cmd.env_remove("VER4_SEED"),
    };
    cmd.output().expect("the binary runs")
}

fn json(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| format!("output is not JSON: {e}"))
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

/// Elements of the witnesses labelled `label` in reports of `check` on `subject`.
fn witnesses<'a>(doc: &'a Value, check: &str, subject: &str, label: &str) -> Vec<Vec<&'a str>> {
    doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["check"] == check && r["subject"] == subject)
        .flat_map(|r| r["witnesses"].as_array().unwrap())
        .filter(|w| w["label"] == label)
        .map(|w| w["elements"].as_array().unwrap().iter().map(|e| e.as_str().unwrap()).collect())
        .collect()
}

fn cli() -> Outcome {
    // fixtures print and re-parse to the same presentation
    for (file, text) in DEFAULT_CATALOG {
        let p = ver4_cli::dsl::parse_presentation(text).map_err(|e| format!("{file}: {e}"))?;
        let again = ver4_cli::dsl::parse_presentation(&p.to_string()).map_err(|e| format!("{file}: {e}"))?;
        ensure!(again == p, "{file} does not round-trip");
    }

    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).map_err(|e| format!("schema: {e}"))?;
    let (t, sym_pp) = (fixture("T.alg"), fixture("symPP.alg"));
    let runs: Vec<(Vec<&str>, i32)> = vec![
        (vec!["verify", &t, "--json"], 0),
        (vec!["check", "ses", "--json"], 0),
        (vec!["check", "covers", "--json"], 0),
        (vec!["check", "glpq", "--algebra", &t, "--algebra", &sym_pp, "--json"], 0),
        (vec!["check", "mn-gr", "--json"], 0),
        (vec!["spec", &t, "--json"], 0),
        (vec!["check", "covers", "--algebra", &t, "--cover", "t^2", "--json"], 1),
    ];
    let mut docs = Vec::new();
    for (args, code) in &runs {
        let first = ver4(args, Some("7"));
        ensure!(first.status.code() == Some(*code), "{args:?} exited {:?}", first.status.code());
        let doc = json(&first)?;
        if let Err(errors) = validator.validate(&doc) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            return Err(format!("{args:?}: schema violations {msgs:?}"));
        }
        let second = json(&ver4(args, Some("7")))?;
        ensure!(without_timing(doc.clone()) == without_timing(second), "{args:?} is not deterministic");
        ensure!(doc["seed"] == 7, "{args:?}: seed not recorded");
        docs.push(doc);
    }

    // usage, configuration and parse errors exit with 2
    let dir = std::env::temp_dir().join(format!("ver4-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.alg");
    std::fs::write(&broken, "algebra B { gen t; D t = ; }").unwrap();
    let broken = broken.to_string_lossy().into_owned();
    for (args, seed) in
        [(vec!["verify", broken.as_str()], None), (vec!["check", "nope"], None), (vec!["verify", &t], Some("x")), (vec!["bogus"], None)]
    {
        let out = ver4(&args, seed);
        ensure!(out.status.code() == Some(2), "{args:?} (seed {seed:?}) exited {:?}", out.status.code());
    }
    std::fs::remove_dir_all(&dir).ok();

    // witnesses re-parse in their algebra and re-verify
    let subject = |file: &str| Subject::from_text(&std::fs::read_to_string(fixture(file)).unwrap()).unwrap();
    let st = subject("T.alg");
    let lifted = witnesses(&docs[1], "ses", "T", "lifted by a twisted cover");
    ensure!(lifted.len() == 2, "expected two cover witnesses on T, got {}", lifted.len());
    for e in lifted.into_iter().flatten() {
        let v = st.element(e).map_err(|err| format!("`{e}`: {err}"))?;
        ensure!(cover_witness(st.table().unwrap(), &v).passed(), "cover witness `{e}` fails");
    }
    let spp = subject("symPP.alg");
    let b = spp.table().unwrap();
    let parse = |e: &str| spp.element(e).map_err(|err| format!("`{e}`: {err}"));
    let g = witnesses(&docs[3], "non-normality", "symPP", "g");
    let h = witnesses(&docs[3], "non-normality", "symPP", "h");
    let ghg = witnesses(&docs[3], "non-normality", "symPP", "g h g^-1");
    ensure!(g.len() == 1 && h.len() == 1 && ghg.len() == 1, "non-normality witnesses missing");
    let w = conjugation_test(b, &parse(g[0][0])?, &parse(h[0][1])?).map_err(|e| e.to_string())?;
    ensure!(w.is_witness(), "re-parsed non-normality witness does not verify");
    ensure!(w.conjugate == [parse(ghg[0][0])?, parse(ghg[0][1])?], "reported conjugate differs");
    let fam = witnesses(&docs[6], "cover", "T", "family");
    let v = st.element(fam[0][0]).map_err(|e| e.to_string())?;
    ensure!(
        matches!(sheaf_equalizer_check(st.table().unwrap(), &[v], &DModule::regular(st.table().unwrap())), Err(Error::NotACover)),
        "reported non-cover is a cover"
    );
    Ok(format!("{} JSON runs valid and deterministic; exit codes 0/1/2; witnesses re-verified", runs.len()))
}

// ---- harness -------------------------------------------------------------------

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "axiom suite", limit: secs(1), run: axioms },
        Criterion { id: 2, name: "braiding", limit: secs(5), run: braiding_criterion },
        Criterion { id: 3, name: "T-points vs projective line", limit: secs(60), run: projaff },
        Criterion { id: 4, name: "V(I) = V(A I^0)", limit: secs(120), run: hypothesis },
        Criterion { id: 5, name: "sheaf equalizer", limit: None, run: sheaf },
        Criterion { id: 6, name: "dlog sequence", limit: None, run: dlog_sequence },
        Criterion { id: 7, name: "GL_P / H", limit: None, run: glp_quotient },
        Criterion { id: 8, name: "non-normality", limit: None, run: non_normality },
        Criterion { id: 9, name: "MN2 / GR", limit: None, run: mn_gr },
        Criterion { id: 10, name: "open sets and localization", limit: None, run: localization },
        Criterion { id: 11, name: "command line", limit: None, run: cli },
    ];
    // criterion 1 times the checks, not the construction of the fixture tables
    fixture_tables();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed >= limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        let limit = c.limit.map_or("no limit".to_string(), |l| format!("limit {l:?}"));
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("[{tag}] {:>2} {:<28} {elapsed:>9.2?} ({limit})  {detail}", c.id, c.name);
        if result.is_err() {
            failed += 1;
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
