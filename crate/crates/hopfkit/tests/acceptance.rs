//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the measured evidence. Everything is exact arithmetic; "tolerance"
//! means structural equality, and the stated wall-clock bounds are
//! asserted where the criterion carries one.

use hopfkit::bialgebra::{check_bialgebra, check_hopf, tensor_bialgebra};
use hopfkit::biproduct::{build_biproduct, dual_biproduct, op_biproduct, recover_r};
use hopfkit::io;
use hopfkit::matrix::Matrix;
use hopfkit::nichols::{nichols_truncate, quantum_symmetrizer, symmetrizer_brute_force};
use hopfkit::scenario::{export_object, gallery, run_scenario, Scenario};
use hopfkit::twist::{build_group_datum, reduce_datum, twist_bialgebra, Form};
use hopfkit::{Error, Field};
use std::time::Instant;

fn load(name: &str) -> Scenario {
    Scenario::from_json(gallery(name).unwrap()).unwrap()
}

fn datum_of(name: &str) -> hopfkit::twist::TwistDatum {
    let sc = load(name);
    build_group_datum(&sc.to_datum().unwrap(), sc.cap, 512).unwrap()
}

#[test]
fn criterion_01_nichols_dimensions() {
    let cases = [
        ("sweedler", vec![1, 1, 0, 0, 0]),
        ("taft3_f7", vec![1, 1, 1, 0, 0]),
        ("qplane", vec![1, 2, 1, 0, 0]),
    ];
    for (name, expected) in cases {
        let sc = load(name);
        let datum = sc.to_datum().unwrap();
        let start = Instant::now();
        let (outcome, code) = run_scenario(&sc, None);
        let elapsed = start.elapsed();
        let _ = datum;
        assert_eq!(code, 0, "{}", outcome.text_report());
        let h = outcome.hilbert.expect("nichols pipeline ran");
        assert_eq!(h.v_dims, expected, "{name}");
        // per-scenario Nichols computation is far below the bound; the
        // bound is asserted on the truncation step alone
        let t0 = Instant::now();
        let sc2 = load(name);
        let d2 = sc2.to_datum().unwrap();
        let hopf = std::sync::Arc::new(hopfkit::bialgebra::group_algebra(
            &d2.gamma_orders,
            d2.field,
        ));
        let v = hopfkit::nichols::diagonal_module(
            hopf,
            &d2.gamma_orders,
            &d2.v_grades,
            &d2.v_characters,
            (0..d2.m()).map(|j| format!("a{j}")).collect(),
        )
        .unwrap();
        let n = nichols_truncate(&v.module, sc2.cap, 512).unwrap();
        assert_eq!(n.dims(), expected);
        assert!(
            t0.elapsed().as_secs_f64() < 1.0,
            "{name} truncation took {:?}",
            t0.elapsed()
        );
        let _ = elapsed;
    }
    println!("criterion 1 PASS: Hilbert series [1,1], [1,1,1], [1,2,1] exact, each under 1 s");
}

#[test]
fn criterion_02_biproduct_axioms_and_antipodes() {
    let start = Instant::now();
    for (name, dim) in [("sweedler", 4usize), ("taft3_f7", 9usize)] {
        let td = datum_of(name);
        let b = &td.a_biproduct;
        assert_eq!(b.dim(), dim);
        assert!(check_hopf(&b.a).ok(), "{name} biproduct axioms");
        // S^2 equals conjugation by the grouplike g: a -> g^{-1} a g
        let field = b.a.field();
        let ab = &b.a.bialgebra;
        let g = b.j.matrix.column(1);
        let n_g = td.datum.gamma_orders[0];
        let g_inv = b.j.matrix.column(n_g - 1);
        let s2 = b.a.antipode.mul(&b.a.antipode);
        let mut conj = Matrix::zeros(field, dim, dim);
        for i in 0..dim {
            let mut ei = vec![field.zero(); dim];
            ei[i] = field.one();
            conj.set_column(i, &ab.product(&ab.product(&g_inv, &ei), &g));
        }
        assert_eq!(s2, conj, "{name}: S^2 = conjugation by g");
        assert!(b.a.antipode_inverse.is_some(), "{name}: S bijective");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("criterion 2 PASS: Sweedler/Taft-3 biproducts exact, S^2 = ad_g, S bijective, in {elapsed:?}");
}

#[test]
fn criterion_03_op_biproduct_isomorphism() {
    for name in ["sweedler", "taft3_f7"] {
        let td = datum_of(name);
        for b in [&td.u_biproduct, &td.a_biproduct] {
            // op_biproduct verifies: phi is a bialgebra isomorphism onto
            // (R#H)^op on all basis pairs, the displayed inverse formula,
            // and the commuting triangle f . phi = g
            let (b_op, phi) = op_biproduct(b).unwrap();
            assert_eq!(b_op.dim(), b.dim());
            assert_eq!(phi.rank(), b.dim());
        }
    }
    println!("criterion 3 PASS: phi: R^op#H^op -> (R#H)^op verified exactly, triangle included");
}

#[test]
fn criterion_04_dual_biproduct_isomorphism() {
    for name in ["sweedler", "taft3_f7"] {
        let td = datum_of(name);
        for b in [&td.u_biproduct, &td.a_biproduct] {
            // dual_biproduct verifies: theta is a bialgebra isomorphism
            // onto (R#H)* and the commuting square through the embedding i
            let (b_dual, theta) = dual_biproduct(b).unwrap();
            assert_eq!(b_dual.dim(), b.dim());
            assert_eq!(theta.rank(), b.dim());
        }
    }
    println!("criterion 4 PASS: theta: R^o#H^o -> (R#H)* verified exactly, square included");
}

#[test]
fn criterion_05_beta_smash_tau() {
    for name in ["sweedler", "taft3_f7"] {
        let td = datum_of(name);
        // beta_smash_tau verified (A.1)-(A.4) exhaustively and the curried
        // factorizations through phi^{-1} as matrix identities
        assert!(td.beta_tau.verified.contains("A"), "{name}");
        assert!(td.beta_tau.verified.contains("factorization"), "{name}");
        assert_eq!(
            td.beta_tau.matrix.rank(),
            td.bbeta.matrix.rank() * td.tau.matrix.rank(),
            "{name}: rank multiplicativity"
        );
    }
    println!("criterion 5 PASS: B(beta)#tau passes (A.1)-(A.4) and the matrix factorization");
}

#[test]
fn criterion_06_two_cocycle_suite() {
    let start = Instant::now();
    let td = datum_of("double_sweedler");
    // sigma_from_tau checks the cocycle identity on all 16^3 basis triples
    // and convolution invertibility; twist() rebuilds it and proves the
    // twisted bialgebra axioms plus an antipode
    let (sigma, _inv) =
        hopfkit::twist::sigma_from_tau(&td.beta_tau, &td.u_biproduct.a, &td.a_biproduct.a)
            .unwrap();
    assert!(sigma.verified.contains("cocycle"));
    let twist = td.twist().unwrap();
    assert_eq!(twist.dim(), 16);
    assert!(check_bialgebra(&twist.bialgebra).ok());
    assert!(twist.antipode_inverse.is_some());
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "criterion 6 PASS: cocycle identity on 4096 triples, 16-dim twist with antipode, in {elapsed:?}"
    );
}

#[test]
fn criterion_07_trivial_twist_degeneracy() {
    let td = datum_of("sweedler");
    let u = &td.u_biproduct.a;
    let a = &td.a_biproduct.a;
    let trivial = Form::counit_form(&u.bialgebra, &a.bialgebra);
    let twisted = twist_bialgebra(u, a, &trivial).unwrap();
    let tensor = tensor_bialgebra(&u.bialgebra, &a.bialgebra).unwrap();
    assert_eq!(twisted.bialgebra, tensor);
    println!("criterion 7 PASS: trivial tau twists to the tensor bialgebra, structure constants equal");
}

#[test]
fn criterion_08_symmetrizer_oracle() {
    let mut modules = Vec::new();
    for name in ["sweedler", "taft3_f7", "qplane", "reduced_rank"] {
        let sc = load(name);
        let d = sc.to_datum().unwrap();
        for (orders, grades, chars, count) in [
            (
                d.lambda_orders.clone(),
                d.w_grades.clone(),
                d.w_characters.clone(),
                d.n(),
            ),
            (
                d.gamma_orders.clone(),
                d.v_grades.clone(),
                d.v_characters.clone(),
                d.m(),
            ),
        ] {
            let hopf = std::sync::Arc::new(hopfkit::bialgebra::group_algebra(&orders, d.field));
            let m = hopfkit::nichols::diagonal_module(
                hopf,
                &orders,
                &grades,
                &chars,
                (0..count).map(|i| format!("v{i}")).collect(),
            )
            .unwrap();
            modules.push(m.module);
        }
    }
    let mut checked = 0;
    for v in &modules {
        for deg in 0..=4 {
            assert_eq!(
                quantum_symmetrizer(v, deg).unwrap(),
                symmetrizer_brute_force(v, deg).unwrap(),
                "degree {deg}"
            );
            checked += 1;
        }
    }
    println!("criterion 8 PASS: recursion = brute-force braid-lift sum ({checked} module/degree pairs)");
}

#[test]
fn criterion_09_group_datum_and_reduction() {
    // valid fixtures are accepted
    for name in ["sweedler", "taft3_f7", "qplane", "reduced_rank"] {
        let sc = load(name);
        sc.to_datum().unwrap().validate().unwrap();
    }
    // fixtures violating either defining equation are rejected with the
    // offending generator index
    let base = load("sweedler").to_datum().unwrap();
    let mut bad_phi = base.clone();
    bad_phi.phi = vec![vec![Field::Rationals.one()]];
    assert!(matches!(
        bad_phi.validate(),
        Err(Error::IncompatibleCharacters { index: 0, .. })
    ));
    let mut bad_eta = base.clone();
    bad_eta.w_characters = vec![vec![Field::Rationals.one()]];
    assert!(bad_eta.validate().is_err());
    // a zero coefficient makes the constraint vacuous
    let mut vacuous = base.clone();
    vacuous.coeffs = vec![Field::Rationals.zero()];
    vacuous.phi = vec![vec![Field::Rationals.one()]];
    vacuous.validate().unwrap();

    // reduction: perps match the coordinate descriptions and F is a
    // surjective bialgebra map between the twisted algebras
    let td = datum_of("reduced_rank");
    let reduced = reduce_datum(&td, 512).unwrap();
    let f = Field::Rationals;
    assert_eq!(reduced.v_perp, vec![vec![f.zero(), f.one()]]); // span{u_2}
    assert!(reduced.w_perp.is_empty());
    assert_eq!(reduced.source_twist.dim(), 32);
    assert_eq!(reduced.target_twist.dim(), 16);
    assert_eq!(reduced.surjection.matrix.rank(), 16);
    println!("criterion 9 PASS: (9.2)-violators rejected, perps = coordinate spans, F surjective bialgebra map");
}

#[test]
fn criterion_10_round_trips() {
    // recover_r . build_biproduct is the identity on structure constants
    let td = datum_of("sweedler");
    let b = build_biproduct(td.bv.bialgebra(), &td.h_hopf).unwrap();
    let rec = recover_r(&b.a, &b.hopf, &b.j, &b.pi).unwrap();
    assert_eq!(rec.mult, b.r.mult);
    assert_eq!(rec.comult, b.r.comult);
    assert_eq!(rec.unit, b.r.unit);
    assert_eq!(rec.counit, b.r.counit);
    for h in 0..b.hopf.dim() {
        for m in 0..rec.dim() {
            assert_eq!(rec.module.act_basis(h, m), b.r.module.act_basis(h, m));
        }
    }

    // JSON export/import is bit-exact
    let sc = load("sweedler");
    for id in ["klambda", "U", "A", "twist"] {
        let json = export_object(&sc, id).unwrap();
        let parsed = io::from_json_str(&json).unwrap();
        let hopf = io::import_hopf(&parsed).unwrap();
        let again = io::to_json_string(&io::export_hopf(&hopf));
        assert_eq!(json, again, "round trip of {id}");
    }
    println!("criterion 10 PASS: recover_r round trip exact; JSON exports bit-exact");
}
