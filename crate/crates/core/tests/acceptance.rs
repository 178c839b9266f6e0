//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semirigid::constructions::{
    pierce_system, product_system, simplex_system, tn, tn2, tn2p, u_example, zadori,
};
use semirigid::lattice::{are_isomorphic, census, generates_eqv, is_m3, CensusMode};
use semirigid::nets::{embed_into_3net, pairwise_orthogonal};
use semirigid::partition::all_partitions;
use semirigid::planar::{
    fit_homothety, induced_system, is_monogenic, maintheo_certificate, symmetry_center,
    Certificate, PlanarSet, Point,
};
use semirigid::search::{endomorphisms, is_semirigid};
use semirigid::ultra::{self, proper_nonexpansive_map, ChainUltrametric};
use semirigid::{is_homomorphism, restrict, Partition, SelfMap, System};

/// Every endomorphism, found by plain backtracking over element images with a
/// pairwise check: `x ~ y` in a relation forces `f(x) ~ f(y)` in it.
fn oracle_endos(m: &System) -> Vec<Vec<usize>> {
    fn extend(m: &System, f: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let x = f.len();
        if x == m.n() {
            out.push(f.clone());
            return;
        }
        for v in 0..m.n() {
            let ok = (0..x).all(|y| {
                m.relations()
                    .iter()
                    .all(|r| !r.same(x, y) || r.same(v, f[y]))
            });
            if ok {
                f.push(v);
                extend(m, f, out);
                f.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(m, &mut Vec::with_capacity(m.n()), &mut out);
    out
}

fn oracle_semirigid(m: &System) -> bool {
    let n = m.n();
    let expected = if n <= 1 { 1 } else { n + 1 };
    oracle_endos(m).len() == expected
}

fn system(c: &PlanarSet) -> System {
    induced_system(c).expect("planar systems have arity 3")
}

#[derive(Default)]
struct Shared {
    /// Semirigid triples met in criteria 1–5.
    semirigid_triples: Vec<(String, System)>,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_zadori(sh: &mut Shared) -> Check {
    for n in [3, 5, 6, 7, 8, 9, 10, 11] {
        let m = zadori(n).map_err(|e| e.to_string())?;
        let report = is_semirigid(&m);
        ensure(report.semirigid, || format!("zadori({n}) reported not semirigid"))?;
        let count = endomorphisms(&m, None).maps.len();
        ensure(count == n + 1, || format!("zadori({n}) has {count} endomorphisms"))?;
        let oracle = oracle_endos(&m).len();
        ensure(oracle == n + 1, || format!("oracle finds {oracle} endomorphisms of zadori({n})"))?;
        sh.semirigid_triples.push((format!("zadori({n})"), m));
    }
    Ok("n ∈ {3,5,6,7,8,9,10,11}: exactly n+1 endomorphisms".into())
}

fn c2_census(sh: &mut Shared) -> Check {
    let ordered = |n| census(n, CensusMode::Ordered).map_err(|e| e.to_string());
    let counts: Vec<usize> = (2..=5).map(|n| ordered(n).map(|c| c.count)).collect::<Result<_, _>>()?;
    ensure(counts[0] == 0, || format!("census(2) = {}", counts[0]))?;
    ensure(counts[2] == 0, || format!("census(4) = {}", counts[2]))?;
    ensure(counts[1] >= 1, || "census(3) = 0".into())?;
    ensure(counts[3] >= 1, || "census(5) = 0".into())?;
    // exhaustive cross-check with the oracle for n ≤ 4
    for n in 2..=4 {
        let parts = all_partitions(n);
        let mut oracle = 0;
        for p in &parts {
            for q in &parts {
                for r in &parts {
                    let m = System::new(n, vec![p.clone(), q.clone(), r.clone()]).unwrap();
                    if oracle_semirigid(&m) {
                        oracle += 1;
                    }
                }
            }
        }
        ensure(oracle == counts[n - 2], || {
            format!("census({n}) = {} but the oracle counts {oracle}", counts[n - 2])
        })?;
    }
    for n in [3, 5] {
        for labels in ordered(n)?.representatives {
            let m = System::from_label_vectors(n, &labels).unwrap();
            ensure(oracle_semirigid(&m), || format!("census({n}) lists a non-semirigid triple"))?;
            sh.semirigid_triples.push((format!("census({n}) triple"), m));
        }
    }
    let iso = census(5, CensusMode::UpToIso { permute_relations: false }).map_err(|e| e.to_string())?;
    let iso_rel = census(5, CensusMode::UpToIso { permute_relations: true }).map_err(|e| e.to_string())?;
    Ok(format!(
        "ordered counts n=2..5: {counts:?}; n=5 up to isomorphism: {} ({} with relation order ignored)",
        iso.count, iso_rel.count
    ))
}

fn c3_triangles(sh: &mut Shared) -> Check {
    for (n, size) in [(1, 3), (2, 6), (3, 10), (4, 15)] {
        let c = tn(n).map_err(|e| e.to_string())?;
        ensure(c.len() == size, || format!("|T_{n}| = {}", c.len()))?;
        let m = system(&c);
        ensure(is_semirigid(&m).semirigid, || format!("T_{n} not semirigid"))?;
        ensure(oracle_semirigid(&m), || format!("oracle: T_{n} not semirigid"))?;
        let cert = maintheo_certificate(&c).map_err(|e| e.to_string())?;
        ensure(cert.is_certified(), || format!("T_{n}: {cert:?}"))?;
        sh.semirigid_triples.push((format!("T_{n}"), m));
    }
    Ok("T_1..T_4 semirigid and certified".into())
}

fn c4_isomorphy(sh: &mut Shared) -> Check {
    for n in 2..=5i64 {
        let odd = system(&tn2(n).map_err(|e| e.to_string())?);
        let even = system(&tn2p(n).map_err(|e| e.to_string())?);
        let (zo, ze) = (zadori(2 * n as usize + 1).unwrap(), zadori(2 * n as usize + 2).unwrap());
        ensure(are_isomorphic(&odd, &zo, true).unwrap().is_some(), || {
            format!("T_{n},2 not isomorphic to zadori({})", 2 * n + 1)
        })?;
        ensure(are_isomorphic(&even, &ze, true).unwrap().is_some(), || {
            format!("T'_{n},2 not isomorphic to zadori({})", 2 * n + 2)
        })?;
        for (name, m) in [(format!("T_{n},2"), odd), (format!("T'_{n},2"), even)] {
            if is_semirigid(&m).semirigid {
                sh.semirigid_triples.push((name, m));
            }
        }
    }
    Ok("n = 2..5, both parities".into())
}

fn c5_u(sh: &mut Shared) -> Check {
    let u = u_example();
    let m = system(&u);
    ensure(is_semirigid(&m).semirigid && oracle_semirigid(&m), || "U not semirigid".into())?;
    ensure(is_monogenic(&u).is_none(), || "U reported monogenic".into())?;
    let cert = maintheo_certificate(&u).map_err(|e| e.to_string())?;
    ensure(matches!(cert, Certificate::Inconclusive { .. }), || format!("U: {cert:?}"))?;
    sh.semirigid_triples.push(("U".into(), m));
    Ok("semirigid, not monogenic, certificate inconclusive".into())
}

fn c6_m3(sh: &mut Shared) -> Check {
    let total = sh.semirigid_triples.len();
    ensure(total > 0, || "no semirigid triples collected".into())?;
    for (name, m) in &sh.semirigid_triples {
        ensure(is_m3(m).unwrap_or(false), || format!("{name} does not generate M3"))?;
    }
    Ok(format!("{total} semirigid triples, all M3"))
}

fn c7_products(_: &mut Shared) -> Check {
    for i in 1..=3u32 {
        let m = product_system(2, i as usize).map_err(|e| e.to_string())?;
        let count = endomorphisms(&m, None).maps.len();
        ensure(count == 4usize.pow(i), || format!("2^{i}: {count} endomorphisms"))?;
        ensure(oracle_endos(&m).len() == count, || format!("oracle disagrees on 2^{i}"))?;
    }
    Ok("4, 16, 64 endomorphisms".into())
}

fn c8_simplex(_: &mut Shared) -> Check {
    for n in 1..=4usize {
        let s = simplex_system(3, n).map_err(|e| e.to_string())?;
        ensure(is_semirigid(&s).semirigid, || format!("S(3,{n}) not semirigid"))?;
        let t = system(&tn(n as i64).unwrap());
        ensure(are_isomorphic(&s, &t, true).unwrap().is_some(), || {
            format!("S(3,{n}) not isomorphic to T_{n}")
        })?;
    }
    for n in [1, 2] {
        let s = simplex_system(4, n).map_err(|e| e.to_string())?;
        ensure(is_semirigid(&s).semirigid && oracle_semirigid(&s), || {
            format!("S(4,{n}) not semirigid")
        })?;
    }
    Ok("S(3,1..4) ≅ T_1..T_4; S(4,1), S(4,2) semirigid".into())
}

fn c9_certificate(_: &mut Shared) -> Check {
    let cells: Vec<Point> = (0..4).flat_map(|x| (0..4).map(move |y| Point::new(x, y))).collect();
    let (mut monogenic, mut certified, mut maps_fitted) = (0, 0, 0);
    for mask in 0u32..1 << 16 {
        let k = mask.count_ones();
        if !(3..=8).contains(&k) {
            continue;
        }
        let c: PlanarSet = (0..16).filter(|b| mask >> b & 1 == 1).map(|b| cells[b]).collect();
        if is_monogenic(&c).is_none() {
            continue;
        }
        monogenic += 1;
        let m = system(&c);
        let endos = oracle_endos(&m);
        for f in &endos {
            let images: Vec<Point> = f.iter().map(|&v| c.points()[v]).collect();
            ensure(fit_homothety(&c, &images).unwrap().is_some(), || {
                format!("endomorphism {f:?} of {:?} is not a homothety", c.points())
            })?;
            maps_fitted += 1;
        }
        if symmetry_center(&c).unwrap().is_none() {
            let brute = endos.len() == c.len() + 1;
            let cert = maintheo_certificate(&c).unwrap().is_certified();
            ensure(brute == cert && brute == is_semirigid(&m).semirigid, || {
                format!("{:?}: brute force {brute}, certificate {cert}", c.points())
            })?;
            certified += 1;
        }
    }
    Ok(format!(
        "{monogenic} monogenic subsets, {certified} without center all agree, {maps_fitted} endomorphisms fitted"
    ))
}

/// A random partial latin square with at most 12 filled cells, read as a
/// (row, column, symbol) triple with shuffled elements and relation order.
fn random_orthogonal_triple(rng: &mut ChaCha8Rng) -> System {
    let order = rng.gen_range(1..=6usize);
    let target = rng.gen_range(1..=12usize.min(order * order));
    let mut cells: Vec<(usize, usize)> =
        (0..order).flat_map(|r| (0..order).map(move |c| (r, c))).collect();
    cells.shuffle(rng);
    let mut filled: Vec<[usize; 3]> = Vec::new();
    for (r, c) in cells {
        if filled.len() == target {
            break;
        }
        let free: Vec<usize> = (0..order)
            .filter(|&s| !filled.iter().any(|t| (t[0] == r || t[1] == c) && t[2] == s))
            .collect();
        if let Some(&s) = free.choose(rng) {
            filled.push([r, c, s]);
        }
    }
    filled.shuffle(rng);
    let mut rel = [0usize, 1, 2];
    rel.shuffle(rng);
    let relations = rel
        .iter()
        .map(|&i| Partition::from_labels(&filled.iter().map(|t| t[i]).collect::<Vec<_>>()))
        .collect();
    System::new(filled.len(), relations).unwrap()
}

fn c10_evans(_: &mut Shared) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut max_ratio = 0.0f64;
    for trial in 0..50 {
        let m = random_orthogonal_triple(&mut rng);
        ensure(pairwise_orthogonal(&m), || format!("trial {trial}: generator broke orthogonality"))?;
        let e = embed_into_3net(&m).map_err(|err| format!("trial {trial}: {err}"))?;
        ensure(e.order <= 2 * m.n(), || format!("trial {trial}: order {} > 2·{}", e.order, m.n()))?;
        ensure(e.embedding.is_injective(), || format!("trial {trial}: embedding not injective"))?;
        let image = restrict(&e.net, e.embedding.images()).unwrap();
        ensure(are_isomorphic(&image, &m, false).unwrap().is_some(), || {
            format!("trial {trial}: image not isomorphic to the input")
        })?;
        max_ratio = max_ratio.max(e.order as f64 / m.n() as f64);
    }
    Ok(format!("50 triples embedded, max order/|E| = {max_ratio:.2}"))
}

fn random_chain(rng: &mut ChaCha8Rng) -> ChainUltrametric {
    let n = rng.gen_range(2..=8usize);
    let mut cluster: Vec<usize> = (0..n).collect();
    let mut rank = vec![vec![0u64; n]; n];
    let mut level = 0u64;
    while cluster.iter().any(|&c| c != cluster[0]) {
        level += rng.gen_range(1..=2);
        let mut ids: Vec<usize> = cluster.clone();
        ids.sort_unstable();
        ids.dedup();
        ids.shuffle(rng);
        let take = rng.gen_range(2..=ids.len());
        let target = ids[0];
        for &src in &ids[1..take] {
            for x in 0..n {
                for y in 0..n {
                    if cluster[x] == target && cluster[y] == src {
                        rank[x][y] = level;
                        rank[y][x] = level;
                    }
                }
            }
            for c in cluster.iter_mut() {
                if *c == src {
                    *c = target;
                }
            }
        }
    }
    ChainUltrametric::new(n, rank).expect("dendrogram ranks are ultrametric")
}

fn c11_ultra(_: &mut Shared) -> Check {
    let mut systems = 0;
    let mut maps = 0u64;
    for n in 1..=4usize {
        let parts = all_partitions(n);
        let all_maps: Vec<SelfMap> = (0..n.pow(n as u32))
            .map(|mut code| {
                let images = (0..n)
                    .map(|_| {
                        let v = code % n;
                        code /= n;
                        v
                    })
                    .collect();
                SelfMap::new(images, n).unwrap()
            })
            .collect();
        for arity in 1..=3u32 {
            for pick in 0..parts.len().pow(arity) {
                let mut code = pick;
                let relations = (0..arity)
                    .map(|_| {
                        let p = parts[code % parts.len()].clone();
                        code /= parts.len();
                        p
                    })
                    .collect();
                let m = System::new(n, relations).unwrap();
                systems += 1;
                for f in &all_maps {
                    let a = ultra::is_nonexpansive(f, &m, &m).unwrap();
                    let b = is_homomorphism(f, &m, &m).unwrap();
                    ensure(a == b, || format!("{f:?} on {m:?}: non-expansive {a}, homomorphism {b}"))?;
                    maps += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    for trial in 0..100 {
        let s = random_chain(&mut rng);
        let f = proper_nonexpansive_map(&s).map_err(|e| format!("trial {trial}: {e}"))?;
        let n = s.n();
        let shrinks = (0..n).all(|x| (0..n).all(|y| s.rank(f.apply(x), f.apply(y)) <= s.rank(x, y)));
        ensure(shrinks, || format!("trial {trial}: {f:?} expands distances"))?;
        ensure(!f.is_identity() && !f.is_constant(), || format!("trial {trial}: {f:?} is trivial"))?;
    }
    Ok(format!("{systems} systems × all self-maps ({maps} pairs); 100 chain spaces"))
}

fn c12_pierce(_: &mut Shared) -> Check {
    for k in 3..=5 {
        let m = pierce_system(k).map_err(|e| e.to_string())?;
        ensure(generates_eqv(&m).unwrap(), || format!("pierce({k}) does not generate Eqv"))?;
        ensure(is_semirigid(&m).semirigid && oracle_semirigid(&m), || {
            format!("pierce({k}) not semirigid")
        })?;
    }
    Ok("k = 3, 4, 5".into())
}

type Criterion = (u32, &'static str, u64, fn(&mut Shared) -> Check);

const CRITERIA: [Criterion; 12] = [
    (1, "Zadori systems semirigid", 10, c1_zadori),
    (2, "no semirigid triples on 2 or 4 points", 60, c2_census),
    (3, "triangles T_n", 30, c3_triangles),
    (4, "two-row bands isomorphic to Zadori systems", 10, c4_isomorphy),
    (5, "U: semirigid but not certified", 5, c5_u),
    (6, "semirigid triples generate M3", 5, c6_m3),
    (7, "product endomorphism counts", 5, c7_products),
    (8, "simplex systems", 60, c8_simplex),
    (9, "certificate vs brute force on the 4x4 grid", 120, c9_certificate),
    (10, "Evans embedding into 3-nets", 30, c10_evans),
    (11, "non-expansive maps = homomorphisms", 30, c11_ultra),
    (12, "Pierce systems", 30, c12_pierce),
];

fn main() -> ExitCode {
    let mut shared = Shared::default();
    let mut failures = 0;
    for (id, name, budget, run) in CRITERIA {
        let start = Instant::now();
        let result = run(&mut shared);
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (verdict, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {id:>2} {verdict} [{:.2} s / {budget} s] {name}: {detail}",
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failures} failed", CRITERIA.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
