//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use scheme_pair::algebra::{certify_full_matrix, certify_quaternion, is_division};
use scheme_pair::character::{
    closed_form_table, computed_indicators, fs_sum_check, rep_degree2, verify_table,
};
use scheme_pair::construct::{build, relation_elements, relation_index};
use scheme_pair::dihedral::{self, DihedralElement as G};
use scheme_pair::format::{read_scheme, write_scm};
use scheme_pair::gauss::GaussRational;
use scheme_pair::rank3::{paley_tournament, Rank3Input};
use scheme_pair::report::{run_report, ReportInput};
use scheme_pair::scheme::{
    structure_constants_via_products, AssociationScheme, SchemeMeta, StructureConstants, Variant,
};

const PRIMES: [u64; 5] = [3, 7, 11, 19, 23];
const VARIANTS: [Variant; 2] = [Variant::D, Variant::Q];

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn input(q: u64) -> Result<Rank3Input, String> {
    paley_tournament(q).map_err(|e| format!("q={q}: {e}"))
}

fn built(variant: Variant, q: u64) -> Result<(AssociationScheme, SchemeMeta), String> {
    build(variant, &input(q)?).map_err(|e| format!("{variant} q={q}: {e}"))
}

fn construction_validity() -> Outcome {
    for q in PRIMES {
        let start = Instant::now();
        let a = q;
        for v in VARIANTS {
            let (s, _) = built(v, q)?;
            ensure(s.order() as u64 == 4 * (q + 1) && s.rank() == 8, || {
                format!("{v} q={q}: order {} rank {}", s.order(), s.rank())
            })?;
            // rebuild from the relation matrices through the generic validator
            let again = scheme_pair::scheme::validate_scheme(&s.relation_matrices())
                .map_err(|e| format!("{v} q={q}: {e}"))?;
            ensure(again == s, || format!("{v} q={q}: validator disagrees"))?;
            ensure(s.valencies() == [1, 1, 1, 1, a, a, a, a], || {
                format!("{v} q={q}: valencies {:?}", s.valencies())
            })?;
        }
        let took = start.elapsed();
        ensure(took < Duration::from_secs(5), || format!("q={q} took {took:?}"))?;
    }
    Ok(())
}

/// The product rules written out directly from the group multiplication.
fn expected_product(variant: Variant, a: u64, b: u64, g: G, h: G) -> Vec<(G, u64)> {
    let diagonal = |e: G| match variant {
        Variant::D => e.in_h(),
        _ => e.in_k(),
    };
    match (diagonal(g), diagonal(h)) {
        (true, true) => vec![(g * h, 1)],
        (true, false) | (false, true) => vec![(g * h, 1)],
        (false, false) => match variant {
            Variant::D => vec![
                (g * h, a),
                (g * h * G::X, b),
                (g * h * G::X3, b),
            ],
            _ => vec![
                (g * h * G::X2, a),
                (g * h * G::XY, b),
                (g * h * G::X3Y, b),
            ],
        },
    }
}

fn check_products(variant: Variant, sc: &StructureConstants, a: u64, b: u64) -> Outcome {
    let elements = relation_elements(variant).map_err(|e| e.to_string())?;
    for (i, &g) in elements.iter().enumerate() {
        for (j, &h) in elements.iter().enumerate() {
            let mut want = [0u64; 8];
            for (e, coeff) in expected_product(variant, a, b, g, h) {
                let k = relation_index(variant, e).map_err(|e| e.to_string())?;
                want[k] += coeff;
            }
            ensure(sc.product(i, j) == want, || {
                format!("{variant}: product ({i},{j}) is {:?}, expected {want:?}", sc.product(i, j))
            })?;
        }
    }
    Ok(())
}

fn structure_constants() -> Outcome {
    for q in PRIMES {
        let (a, b) = (q, (q - 1) / 2);
        for v in VARIANTS {
            let (s, _) = built(v, q)?;
            check_products(v, s.structure_constants(), a, b).map_err(|e| format!("q={q} {e}"))?;
            if q <= 7 {
                let oracle = structure_constants_via_products(&s).map_err(|e| e.to_string())?;
                ensure(&oracle == s.structure_constants(), || {
                    format!("{v} q={q}: color counting differs from matrix products")
                })?;
            }
        }
    }
    Ok(())
}

fn literal_grid(a: i64) -> Vec<[i64; 8]> {
    vec![
        [1, 1, 1, 1, a, a, a, a],
        [1, 1, -1, -1, a, a, -a, -a],
        [1, 1, 1, 1, -1, -1, -1, -1],
        [1, 1, -1, -1, -1, -1, 1, 1],
        [2, -2, 0, 0, 0, 0, 0, 0],
    ]
}

fn character_tables() -> Outcome {
    for q in PRIMES {
        let a = q as i64;
        let mut grids = Vec::new();
        for v in VARIANTS {
            let (s, meta) = built(v, q)?;
            let t = closed_form_table(v, q).map_err(|e| e.to_string())?;
            for (r, row) in literal_grid(a).iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    ensure(*t.values.get(r, c) == rat(x), || format!("{v} q={q}: entry ({r},{c})"))?;
                }
            }
            let cert = verify_table(&s, &meta, &t).map_err(|e| format!("{v} q={q}: {e}"))?;
            let want: Vec<BigRational> = [1, 1, a, a, a + 1].into_iter().map(rat).collect();
            ensure(cert.multiplicities == want, || {
                format!("{v} q={q}: multiplicities {:?}", cert.multiplicities)
            })?;
            grids.push(t.values);
        }
        ensure(grids[0] == grids[1], || format!("q={q}: value grids differ"))?;
    }
    Ok(())
}

fn indicators() -> Outcome {
    for q in PRIMES {
        for (v, last, census) in [(Variant::D, 1, 6), (Variant::Q, -1, 2)] {
            let (s, _) = built(v, q)?;
            let t = closed_form_table(v, q).map_err(|e| e.to_string())?;
            let nu = computed_indicators(&s, &t);
            let want: Vec<BigRational> = [1, 1, 1, 1, last].into_iter().map(rat).collect();
            ensure(nu == want, || format!("{v} q={q}: indicators {nu:?}"))?;
            let sum = fs_sum_check(&s, &t).map_err(|e| format!("{v} q={q}: {e}"))?;
            ensure(sum.indicator_sum == rat(census) && sum.symmetric_relations == census as usize, || {
                format!("{v} q={q}: indicator sum {:?}", sum)
            })?;
        }
    }
    Ok(())
}

fn representations() -> Outcome {
    for q in PRIMES {
        for v in VARIANTS {
            let (s, _) = built(v, q)?;
            // rep_degree2 checks all 64 identities against the built constants
            let rep = rep_degree2(v, q, s.structure_constants()).map_err(|e| format!("{v} q={q}: {e}"))?;
            ensure(rep.images.len() == 8 && rep.degree() == 2, || format!("{v} q={q}: shape"))?;
            let traces = rep.character();
            let want: Vec<GaussRational> =
                [2, -2, 0, 0, 0, 0, 0, 0].into_iter().map(GaussRational::from).collect();
            ensure(traces == want, || format!("{v} q={q}: traces {traces:?}"))?;
        }
    }
    Ok(())
}

fn rational_structure() -> Outcome {
    for q in PRIMES {
        let (s, _) = built(Variant::D, q)?;
        let rep = rep_degree2(Variant::D, q, s.structure_constants()).map_err(|e| e.to_string())?;
        let cert = certify_full_matrix(&rep).map_err(|e| format!("D q={q}: {e}"))?;
        ensure(cert.dimension == 4, || format!("D q={q}: span {}", cert.dimension))?;

        let (s, _) = built(Variant::Q, q)?;
        let rep = rep_degree2(Variant::Q, q, s.structure_constants()).map_err(|e| e.to_string())?;
        let p = certify_quaternion(&rep, q).map_err(|e| format!("Q q={q}: {e}"))?;
        ensure(p.r == rat(-1) && p.s == rat(-(q as i64)), || format!("Q q={q}: parameters"))?;
        ensure(is_division(&p.r, &p.s) == Ok(true), || format!("Q q={q}: not flagged division"))?;
    }
    Ok(())
}

fn degenerate_case() -> Outcome {
    let report = run_report(&ReportInput::Degenerate).map_err(|e| e.to_string())?;
    ensure(report.passed(), || "report checks failed".into())?;
    ensure(report.a == 1 && report.b == 0, || "parameters".into())?;
    for (v, involutions, census, mut orders) in [
        (&report.d, 5, 6, vec![1, 2, 2, 2, 2, 2, 4, 4]),
        (&report.q, 1, 2, vec![1, 2, 4, 4, 4, 4, 4, 4]),
    ] {
        let tag = v.variant;
        ensure(v.scheme.order() == 8 && v.thin_profile.is_thin, || format!("{tag}: not thin of order 8"))?;
        let mut got = v.thin_profile.element_orders.clone().unwrap_or_default();
        got.sort_unstable();
        orders.sort_unstable();
        ensure(got == orders, || format!("{tag}: element orders {got:?}"))?;
        ensure(v.thin_profile.involution_count() == Some(involutions), || format!("{tag}: involutions"))?;
        ensure(v.symmetric_relations == census, || format!("{tag}: census {}", v.symmetric_relations))?;
        ensure(v.indicator_sum.symmetric_relations == census, || format!("{tag}: indicator sum"))?;
    }
    let table = closed_form_table(Variant::D, 1).map_err(|e| e.to_string())?;
    ensure(report.d.table == table && report.tables_identical(), || "table pattern".into())?;
    ensure(report.indicators_differ_in_last(), || "indicator pattern".into())?;
    ensure(report.d.algebra.to_string() == "QD = Q + Q + Q + Q + M2(Q)", || "D algebra".into())?;
    ensure(
        report.q.algebra.to_string() == "QQ = Q + Q + Q + Q + Quaternion(-1,-1) [division]",
        || format!("Q algebra: {}", report.q.algebra),
    )?;
    Ok(())
}

fn property_suite() -> Outcome {
    dihedral::self_test()?;

    let (s, _) = built(Variant::D, 3)?;
    let order = s.order();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..100 {
        let mut colors = s.colors().to_vec();
        let cell = rng.gen_range(0..colors.len());
        let shift = rng.gen_range(1..s.rank());
        colors[cell] = (colors[cell] + shift) % s.rank();
        let accepted = AssociationScheme::from_colors(order, s.rank(), colors)
            .ok()
            .and_then(|m| structure_constants_via_products(&m).ok());
        ensure(accepted.is_none(), || {
            format!("trial {trial}: mutation at cell {cell} accepted")
        })?;
    }

    for q in PRIMES {
        for v in VARIANTS {
            let (s, meta) = built(v, q)?;
            let text = write_scm(&s, Some(&meta));
            let (back, back_meta) = read_scheme(&text).map_err(|e| e.to_string())?;
            ensure(write_scm(&back, back_meta.as_ref()) == text, || {
                format!("{v} q={q}: round trip not byte-identical")
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 construction validity", construction_validity),
        ("2 structure-constant conformance", structure_constants),
        ("3 character tables", character_tables),
        ("4 Frobenius-Schur indicators", indicators),
        ("5 degree-2 representations", representations),
        ("6 rational algebra structure", rational_structure),
        ("7 degenerate case", degenerate_case),
        ("8 property suite", property_suite),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("PASS criterion {name}"),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(60) {
        failures += 1;
        println!("FAIL suite runtime {took:?} exceeds 60 s");
    } else {
        println!("suite runtime {took:.2?}");
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
