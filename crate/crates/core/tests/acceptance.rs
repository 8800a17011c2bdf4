//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use latticeforge::geometry::{self, LatticePoint, LatticePolytope, LatticeSimplex};
use latticeforge::linalg;
use latticeforge::sumset::{hfold_sumset, idp_check, idp_scan, PointSet};
use latticeforge::unimodular::{
    self, decompose, decompose_in_simplex, find_ell, find_unimodular_triangulation,
    CertificateOutcome, CoverStatus, Decomposition,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Decompositions produced by the decomposition and agreement criteria,
/// checked again by the support criterion.
static PRODUCED: Mutex<Vec<Decomposition>> = Mutex::new(Vec::new());

fn pt(c: &[i64]) -> LatticePoint {
    LatticePoint::new(c.to_vec())
}

fn sorted(mut v: Vec<LatticePoint>) -> Vec<LatticePoint> {
    v.sort();
    v
}

fn a1() -> LatticeSimplex {
    LatticeSimplex::new(vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 2])]).unwrap()
}

fn a2() -> LatticeSimplex {
    LatticeSimplex::new(vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 2])]).unwrap()
}

fn fixture_a1() -> Result<String, String> {
    let s = a1();
    let got = geometry::lattice_points(&s.hull()).map_err(|e| e.to_string())?;
    let want = sorted(vec![
        pt(&[0, 0, 0]),
        pt(&[1, 0, 0]),
        pt(&[0, 1, 0]),
        pt(&[0, 0, 1]),
        pt(&[0, 0, 2]),
    ]);
    check(got == want, format!("lattice points {got:?}"))?;
    let index = unimodular::lattice_index(&s);
    check(index.value() == Some(&BigInt::from(2)), format!("index {index}"))?;
    let diag = unimodular::difference_hnf(&s).diagonal();
    check(diag == [1, 1, 2].map(BigInt::from), format!("HNF diagonal {diag:?}"))?;
    Ok("5 lattice points, index 2, HNF diagonal (1,1,2)".into())
}

fn fixture_a2() -> Result<String, String> {
    let s = a2();
    let got = geometry::lattice_points(&s.hull()).map_err(|e| e.to_string())?;
    check(got == sorted(s.vertices().to_vec()), format!("lattice points {got:?}"))?;
    let index = unimodular::lattice_index(&s);
    check(index.value() == Some(&BigInt::from(2)), format!("index {index}"))?;
    check(!unimodular::is_unimodular(&s), "reported unimodular".into())?;
    Ok("lattice points are the 4 vertices, index 2, not unimodular".into())
}

fn oracle_counterexample() -> Result<String, String> {
    let s = a2();
    let report = idp_check(&s.hull(), 2).map_err(|e| e.to_string())?;
    let w = pt(&[1, 1, 1]);
    check(!report.holds, "idp_check(2) holds".into())?;
    check(report.witnesses.contains(&w), format!("witnesses {:?}", report.witnesses))?;

    // Independent: (1,1,1) is half the sum of the four vertices, so it lies
    // in 2Δ, yet no 2-multiset of the lattice points sums to it.
    let v = s.vertices();
    let total: Vec<i64> = (0..3).map(|i| v.iter().map(|p| p.coords()[i]).sum()).collect();
    check(total == [2, 2, 2], format!("vertex sum {total:?}"))?;
    let points = geometry::lattice_points(&s.hull()).map_err(|e| e.to_string())?;
    check(points.len() == 4, "expected 4 lattice points".into())?;
    let mut pairs = 0;
    for i in 0..points.len() {
        for j in i..points.len() {
            pairs += 1;
            let sum: Vec<i64> = (0..3).map(|k| points[i].coords()[k] + points[j].coords()[k]).collect();
            check(sum != w.coords(), format!("{} + {} = (1,1,1)", points[i], points[j]))?;
        }
    }
    Ok(format!("witness (1,1,1); none of the {pairs} 2-multisets sums to it"))
}

/// A unimodular simplex: a random unimodular image of the standard simplex,
/// translated.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> LatticeSimplex {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..rng.gen_range(1..=n + 1) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let k = if rng.gen_bool(0.5) { 1 } else { -1 };
        for r in 0..n {
            let add = k * m[r][j];
            m[r][i] += add;
        }
    }
    if rng.gen_bool(0.5) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }
    let shift: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    let mut vertices = vec![LatticePoint::new(shift.clone())];
    for j in 0..n {
        vertices.push(LatticePoint::new((0..n).map(|r| shift[r] + m[r][j]).collect()));
    }
    LatticeSimplex::new(vertices).unwrap()
}

fn unimodular_decomposition() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut simplices = 0;
    let mut points = 0;
    let mut produced = Vec::new();
    while simplices < 120 {
        let n = 2 + simplices % 3;
        let s = random_unimodular(&mut rng, n);
        let det = linalg::determinant(&s.difference_matrix()).map_err(|e| e.to_string())?;
        check(det == BigInt::from(1) || det == BigInt::from(-1), format!("det {det}"))?;
        let verts = PointSet::new(n, s.vertices().to_vec()).map_err(|e| e.to_string())?;
        for h in 1..=4u64 {
            let brute = hfold_sumset(&verts, h).map_err(|e| e.to_string())?;
            let dilate = geometry::lattice_points(&s.dilate(h).unwrap().hull()).map_err(|e| e.to_string())?;
            check(
                brute.points() == dilate.as_slice(),
                format!("h = {h}: |hA| = {} vs |hΔ ∩ Z^n| = {} for {:?}", brute.len(), dilate.len(), s.vertices()),
            )?;
            for p in &dilate {
                let d = decompose_in_simplex(&s, p, h).map_err(|e| format!("{p} at h = {h}: {e}"))?;
                check(recombines(&d), format!("{p} at h = {h} does not recombine"))?;
                produced.push(d);
                points += 1;
            }
        }
        simplices += 1;
    }
    PRODUCED.lock().unwrap().extend(produced);
    Ok(format!("{simplices} simplices in dims 2-4, h ≤ 4, {points} points decomposed"))
}

fn recombines(d: &Decomposition) -> bool {
    let n = d.point.dim();
    let mut sum = vec![0i64; n];
    for part in &d.parts {
        for (s, x) in sum.iter_mut().zip(part.coords()) {
            *s += x;
        }
    }
    d.parts.len() as u64 == d.h && sum == d.point.coords()
}

fn certificate_agreement() -> Result<String, String> {
    let mut cases: Vec<(String, LatticePolytope)> = (1..=4)
        .map(|n| (format!("std-simplex-{n}"), LatticeSimplex::standard(n).unwrap().hull()))
        .collect();
    cases.push(("square".into(), LatticePolytope::unit_cube(2).unwrap()));
    cases.push(("cube".into(), LatticePolytope::unit_cube(3).unwrap()));
    let mut produced = Vec::new();
    for (name, p) in &cases {
        let search = find_unimodular_triangulation(p, 16, 0).map_err(|e| e.to_string())?;
        let cover = search.cover.ok_or(format!("{name}: no certified triangulation"))?;
        check(cover.status == CoverStatus::Certified, format!("{name}: {:?}", cover.status))?;
        let scan = idp_scan(p, 4).map_err(|e| e.to_string())?;
        for r in &scan {
            check(r.holds, format!("{name}: oracle fails at h = {}", r.h))?;
        }
        if name == "cube" {
            check(cover.cells.len() == 6, format!("cube has {} cells", cover.cells.len()))?;
            for c in &cover.cells {
                check(c.normalized_volume() == BigInt::from(1), "cube cell volume != 1".into())?;
            }
        }
        for h in 1..=4u64 {
            for x in geometry::lattice_points(&geometry::dilate(p, h).unwrap()).unwrap() {
                let d = decompose(p, &cover, &x, h).map_err(|e| format!("{name}: {x}: {e}"))?;
                check(recombines(&d), format!("{name}: {x} at h = {h} does not recombine"))?;
                produced.push(d);
            }
        }
    }
    PRODUCED.lock().unwrap().extend(produced);
    Ok("std simplices n ≤ 4, square, cube certified; oracle holds for h ≤ 4; cube has 6 unit cells".into())
}

fn support_criterion() -> Result<String, String> {
    let all = PRODUCED.lock().unwrap();
    check(!all.is_empty(), "no decompositions were produced".into())?;
    for d in all.iter() {
        let total: u64 = d.weights.iter().map(|(_, w)| w).sum();
        check(total == d.h, format!("{}: weights sum to {total}, h = {}", d.point, d.h))?;
        check(recombines(d), format!("{}: parts do not recombine", d.point))?;
        // Affine independence of the support, by rank of differences.
        let support: Vec<&LatticePoint> =
            d.weights.iter().filter(|(_, w)| *w > 0).map(|(v, _)| v).collect();
        let base = support[0];
        let rows: Vec<Vec<BigInt>> = support[1..]
            .iter()
            .map(|v| v.coords().iter().zip(base.coords()).map(|(a, b)| BigInt::from(a - b)).collect())
            .collect();
        check(
            rows.is_empty() || linalg::rank(&rows) == rows.len(),
            format!("{}: dependent support", d.point),
        )?;
        // Weights match the parts multiset.
        for (v, w) in &d.weights {
            let count = d.parts.iter().filter(|p| *p == v).count() as u64;
            check(count == *w, format!("{}: weight/part mismatch at {v}", d.point))?;
        }
    }
    Ok(format!("{} decompositions checked", all.len()))
}

fn inclusion() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for _ in 0..200 {
        let dim = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=6);
        let gens: Vec<LatticePoint> = (0..count)
            .map(|_| LatticePoint::new((0..dim).map(|_| rng.gen_range(-3..=3)).collect()))
            .collect();
        let p = LatticePolytope::new(gens).map_err(|e| e.to_string())?;
        let base = PointSet::new(dim, geometry::lattice_points(&p).unwrap()).unwrap();
        for h in 1..=3u64 {
            let lhs = hfold_sumset(&base, h).map_err(|e| e.to_string())?;
            let rhs = PointSet::new(dim, geometry::lattice_points(&geometry::dilate(&p, h).unwrap()).unwrap())
                .unwrap();
            if let Some(x) = lhs.iter().find(|x| !rhs.contains(x)) {
                return Err(format!("{x} in h(P ∩ Z^n) but not in hP for h = {h}, P = {:?}", p.vertices()));
            }
            checked += 1;
        }
    }
    Ok(format!("200 polytopes, {checked} (P, h) pairs, no violations"))
}

fn dilation_probe() -> Result<String, String> {
    let r = find_ell(&a2().hull(), 4, 3, 32, 0).map_err(|e| e.to_string())?;
    check(r.rows.len() == 4, format!("{} rows", r.rows.len()))?;
    let first = r.row(1).ok_or("no row for ell = 1")?;
    check(!first.certificate.is_certified(), "ell = 1 certified".into())?;
    let h2 = first.idp.iter().find(|i| i.h == 2).ok_or("no h = 2 verdict")?;
    check(!h2.holds && h2.witnesses.contains(&pt(&[1, 1, 1])), "ell = 1 row lacks the h = 2 failure".into())?;
    for row in &r.rows {
        check(row.agrees, format!("ell = {} disagrees", row.ell))?;
        if row.certificate.is_certified() {
            check(row.idp.iter().all(|i| i.holds), format!("ell = {} certified but oracle fails", row.ell))?;
        }
    }
    if let Some(l) = r.ell {
        check(r.row(l).unwrap().certificate.is_certified(), "ell row not certified".into())?;
    }
    let table: Vec<String> = r
        .rows
        .iter()
        .map(|row| {
            let c = match row.certificate {
                CertificateOutcome::Certified { .. } => "certified",
                CertificateOutcome::ProvenNone => "proven-none",
                CertificateOutcome::Unknown { .. } => "unknown",
            };
            let holds: BTreeSet<u64> = row.idp.iter().filter(|i| i.holds).map(|i| i.h).collect();
            format!("ℓ={}:{c},holds-h={holds:?}", row.ell)
        })
        .collect();
    Ok(format!("ell = {:?}; {}", r.ell, table.join("; ")))
}

fn check(ok: bool, why: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why)
    }
}

type Criterion = (&'static str, fn() -> Result<String, String>, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("fixture A1", fixture_a1, Duration::from_secs(1)),
        ("fixture A2", fixture_a2, Duration::from_secs(1)),
        ("oracle counterexample", oracle_counterexample, Duration::from_secs(1)),
        ("unimodular simplex decomposition", unimodular_decomposition, Duration::from_secs(60)),
        ("certificate-oracle agreement", certificate_agreement, Duration::from_secs(30)),
        ("affinely independent support", support_criterion, Duration::from_secs(30)),
        ("sumset inclusion", inclusion, Duration::from_secs(120)),
        ("dilation factor probe", dilation_probe, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= limit {
                Ok(msg)
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS {name} ({elapsed:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
