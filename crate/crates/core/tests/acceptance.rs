//! End-to-end acceptance checks over the 4-variable, exponent ≤ 5 corpus with
//! Thom–Sebastiani sums. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod support;

use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use saito_core::burnside::{burnside_from_cyclotomic, cyclic_generator};
use saito_core::enumerate::{self, CorpusEntry, EnumerationConfig};
use saito_core::group::{
    generating_roots, geometric_roots, symmetry_group, GroupPresentation, Side, SubgroupKey,
};
use saito_core::zeta::{classical_saito_dual, equivariant_zeta, equivariant_zeta_over, milnor_number};
use saito_core::{BigInt, BurnsideElement, InvertiblePolynomial};

use support::{orbit_stabilizers, product_stabilizers, Table};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn config() -> EnumerationConfig {
    EnumerationConfig {
        max_vars: 4,
        max_exp: 5,
        include_sums: true,
        ..EnumerationConfig::default()
    }
}

fn theorem_suite() -> Check {
    let start = Instant::now();
    let summary = enumerate::run(&config()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(!summary.truncated, || "corpus truncated".into())?;
    ensure(summary.total() >= 500, || {
        format!("only {} polynomials", summary.total())
    })?;
    ensure(summary.theorem_fail() == 0, || {
        format!(
            "theoremFail = {}: {}",
            summary.theorem_fail(),
            summary.failures()[0]
        )
    })?;
    ensure(elapsed < Duration::from_secs(120), || {
        format!("took {elapsed:.1?}")
    })?;
    Ok(format!(
        "{} polynomials, theoremFail 0, {:.1?}",
        summary.total(),
        elapsed
    ))
}

fn corollary_suite(corpus: &[CorpusEntry]) -> Check {
    let mut atoms_cyclic = 0;
    for e in corpus.iter().filter(|e| e.atoms.len() == 1) {
        let g = symmetry_group(&e.polynomial, Side::Direct);
        ensure(g.is_cyclic(), || format!("{} has non-cyclic G_f", e.label()))?;
        ensure(
            g.order() == &BigInt::from(e.polynomial.determinant().magnitude().clone()),
            || format!("{}: |G_f| differs from d_f", e.label()),
        )?;
        atoms_cyclic += 1;
    }
    let results: Vec<_> = corpus.par_iter().map(enumerate::verify_entry).collect();
    let checked = results.iter().filter(|r| r.corollary.is_some()).count();
    let cyclic = corpus
        .iter()
        .filter(|e| symmetry_group(&e.polynomial, Side::Direct).is_cyclic())
        .count();
    ensure(checked == cyclic, || {
        format!("{checked} checked but {cyclic} cyclic")
    })?;
    let mut noncyclic_with_roots = 0;
    for e in corpus {
        let f = &e.polynomial;
        let cyclic = symmetry_group(f, Side::Direct).is_cyclic();
        ensure(generating_roots(f).is_empty() != cyclic, || {
            format!("{}: generating roots do not match cyclicity", e.label())
        })?;
        if cyclic {
            ensure(!geometric_roots(f).is_empty(), || {
                format!("{}: cyclic without roots", e.label())
            })?;
        } else if !geometric_roots(f).is_empty() {
            noncyclic_with_roots += 1;
        }
    }
    if let Some(bad) = results.iter().find(|r| r.corollary_passed() == Some(false)) {
        return Err(format!(
            "corollary fails for {}: {:?}",
            bad.entry.label(),
            bad.corollary
        ));
    }
    Ok(format!(
        "{checked} cyclic groups checked, corollaryFail 0; all {atoms_cyclic} loop/chain atoms cyclic of order d_f; generating roots exist exactly for cyclic G_f ({noncyclic_with_roots} non-cyclic groups have only non-generating roots)"
    ))
}

/// Distinct direct groups up to `bound`, keyed by their lattice.
fn groups_up_to(corpus: &[CorpusEntry], bound: u64) -> Vec<(InvertiblePolynomial, Arc<GroupPresentation>)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in corpus {
        let g = symmetry_group(&e.polynomial, Side::Direct);
        if g.order() > &BigInt::from(bound) {
            continue;
        }
        if seen.insert((
            g.scale().clone(),
            g.lattice().clone(),
            e.polynomial.exponents().clone(),
        )) {
            out.push((e.polynomial.clone(), g));
        }
    }
    out
}

fn pairing_zero(e: &[Vec<i64>], a: &[i64], b: &[i64], d: i64) -> bool {
    let mut s = 0i64;
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            s += ai * e[i][j] * bj;
        }
    }
    s.rem_euclid(d * d) == 0
}

fn duality_algebra(corpus: &[CorpusEntry]) -> Check {
    let groups = groups_up_to(corpus, 200);
    let checks: Vec<Result<usize, String>> = groups
        .par_iter()
        .map(|(f, g)| {
            let gt = symmetry_group(f, Side::Transposed);
            let table = Table::new(&gt);
            let gtab = Table::new(g);
            let e: Vec<Vec<i64>> = f
                .exponents()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.try_into().unwrap()).collect())
                .collect();
            let subgroups = g
                .enumerate_subgroups(&BigInt::from(200))
                .map_err(|e| e.to_string())?;
            for h in &subgroups {
                let dual = h.dual_subgroup_in(&gt).map_err(|e| e.to_string())?;
                let back = dual.dual_subgroup_in(g).map_err(|e| e.to_string())?;
                ensure(&back == h, || format!("{f}: double dual of {h:?} is {back:?}"))?;
                ensure(h.order() * dual.order() == *g.order(), || {
                    format!("{f}: |H|·|H~| ≠ |G| for {h:?}")
                })?;
                let gens: Vec<&Vec<i64>> = gtab.key_generators(h).iter().map(|&i| &gtab.elems[i]).collect();
                let kernel: Vec<bool> = table
                    .elems
                    .iter()
                    .map(|lambda| gens.iter().all(|mu| pairing_zero(&e, lambda, mu, table.d)))
                    .collect();
                ensure(kernel == table.members(&dual), || {
                    format!("{f}: lattice dual of {h:?} differs from the pairing kernel")
                })?;
            }
            Ok(subgroups.len())
        })
        .collect();
    let mut total = 0;
    for c in checks {
        total += c?;
    }
    Ok(format!(
        "{} groups of order ≤ 200, {total} subgroups",
        groups.len()
    ))
}

fn from_stabilizers(
    table: &Table,
    owner: &Arc<GroupPresentation>,
    stabs: &[Vec<bool>],
    coeff: &BigInt,
    into: &mut BTreeMap<SubgroupKey, BigInt>,
) {
    for s in stabs {
        *into.entry(table.key_of(s, owner)).or_default() += coeff;
    }
}

fn element(owner: &Arc<GroupPresentation>, terms: BTreeMap<SubgroupKey, BigInt>) -> BurnsideElement {
    BurnsideElement::from_terms(owner, terms).unwrap()
}

fn burnside_oracle(corpus: &[CorpusEntry]) -> Check {
    let mut seen = HashSet::new();
    let groups: Vec<_> = groups_up_to(corpus, 48)
        .into_iter()
        .filter(|(_, g)| seen.insert((g.scale().clone(), g.lattice().clone())))
        .collect();
    let pairs: Vec<Result<usize, String>> = groups
        .par_iter()
        .map(|(_, g)| {
            let t = Table::new(g);
            let subs = g.enumerate_subgroups(&BigInt::from(48)).unwrap();
            let cosets: Vec<Vec<usize>> = subs.iter().map(|h| t.cosets(&t.key_generators(h))).collect();
            let members: Vec<Vec<bool>> = subs.iter().map(|h| t.members(h)).collect();
            let one = BigInt::from(1);
            let mut count = 0;
            for (i, h) in subs.iter().enumerate() {
                let bh = BurnsideElement::basis(h);
                let h_order: usize = h.order().try_into().unwrap();
                for (j, k) in subs.iter().enumerate() {
                    let bk = BurnsideElement::basis(k);
                    let product = bh.multiply(&bk).unwrap();
                    let mut terms = BTreeMap::new();
                    from_stabilizers(
                        &t,
                        g,
                        &product_stabilizers(&t, &cosets[i], &cosets[j]),
                        &one,
                        &mut terms,
                    );
                    ensure(product == element(g, terms), || {
                        format!("[G/{h:?}]·[G/{k:?}] in {g:?}")
                    })?;

                    let restricted = bh.restrict(k).unwrap();
                    let kg = k.as_group();
                    let mut terms = BTreeMap::new();
                    from_stabilizers(
                        &t,
                        &kg,
                        &orbit_stabilizers(&t, &cosets[i], &members[j]),
                        &one,
                        &mut terms,
                    );
                    ensure(restricted == element(&kg, terms), || {
                        format!("Res_{k:?} [G/{h:?}] in {g:?}")
                    })?;

                    for l in &subs {
                        let m = |x: &BurnsideElement| x.mark(l).unwrap();
                        ensure(m(&product) == m(&bh) * m(&bk), || {
                            format!("mark at {l:?} not multiplicative on {h:?}, {k:?}")
                        })?;
                        ensure(m(&bh.add(&bk).unwrap()) == m(&bh) + m(&bk), || {
                            format!("mark at {l:?} not additive")
                        })?;
                    }
                    count += 1;
                }
                for (j, l) in subs.iter().enumerate() {
                    let fixed = (0..t.len())
                        .filter(|&x| {
                            (0..t.len()).all(|y| !members[j][y] || cosets[i][t.add(x, y)] == cosets[i][x])
                        })
                        .count()
                        / h_order;
                    ensure(bh.mark(l).unwrap() == BigInt::from(fixed), || {
                        format!("mark of {l:?} on G/{h:?} is not the fixed-point count")
                    })?;
                }
                ensure(bh.mark(&g.trivial_key()).unwrap() == h.index(), || {
                    "mark at e".into()
                })?;
            }
            Ok(count)
        })
        .collect();
    let mut total = 0;
    for p in pairs {
        total += p?;
    }
    Ok(format!(
        "{} groups of order ≤ 48, {total} subgroup pairs",
        groups.len()
    ))
}

fn classical_checks(corpus: &[CorpusEntry]) -> Check {
    let results: Vec<Result<(), String>> = corpus
        .par_iter()
        .map(|e| {
            let f = &e.polynomial;
            let z = equivariant_zeta(f).map_err(|e| e.to_string())?;
            let mu = milnor_number(f).map_err(|e| e.to_string())?;
            let sign = if f.n() % 2 == 1 {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            };
            let degree: BigInt = z.classical.factors().iter().map(|(m, s)| m * s).sum();
            let w = f.weights();
            let mut num = BigInt::from(1);
            let mut den = BigInt::from(1);
            for wi in &w.canonical_weights {
                num *= &w.canonical_degree - wi;
                den *= wi;
            }
            ensure(&num % &den == BigInt::from(0) && num / den == mu, || {
                format!("{f}: Milnor number")
            })?;
            ensure(degree == 1 + sign * mu, || {
                format!("{f}: Σ m·s_m = {}", z.classical.degree())
            })
        })
        .collect();
    for r in results {
        r?;
    }
    let spot = |s: &str| {
        equivariant_zeta(&s.parse().unwrap())
            .unwrap()
            .classical
            .to_string()
    };
    let a = spot("x^3*y + y^3");
    let b = spot("x^3 + x*y^2");
    ensure(a == "(1-t^3)(1-t^9)^-1", || format!("x^3*y + y^3 gives {a}"))?;
    ensure(b == "(1-t^3)^-1", || format!("x^3 + x*y^2 gives {b}"))?;
    Ok(format!("{} polynomials; spot values {a} and {b}", corpus.len()))
}

fn correspondence(corpus: &[CorpusEntry]) -> Check {
    let results: Vec<Result<bool, String>> = corpus
        .par_iter()
        .map(|e| {
            let f = &e.polynomial;
            let z = equivariant_zeta(f).map_err(|e| e.to_string())?;
            if !z.group.is_cyclic() {
                return Ok(false);
            }
            let gen = cyclic_generator(&z.group).map_err(|e| e.to_string())?;
            let phi = z.equivariant.element_zeta(&gen).map_err(|e| e.to_string())?;
            let back = burnside_from_cyclotomic(&phi, &z.group).map_err(|e| e.to_string())?;
            ensure(back == z.equivariant, || format!("{f}: round trip gives {back}"))?;
            let c = &z.classical;
            ensure(&classical_saito_dual(&classical_saito_dual(c)) == c, || {
                format!("{f}: classical dual is not an involution on {c}")
            })?;
            Ok(true)
        })
        .collect();
    let mut count = 0;
    for r in results {
        count += r? as usize;
    }
    Ok(format!("{count} cyclic groups"))
}

fn isotropy_lemma(corpus: &[CorpusEntry]) -> Check {
    let results: Vec<Result<usize, String>> = corpus
        .par_iter()
        .map(|e| {
            let f = &e.polynomial;
            let z = equivariant_zeta(f).map_err(|e| e.to_string())?;
            let gt = symmetry_group(f, Side::Transposed);
            let table = (z.group.order() <= &BigInt::from(2000)).then(|| Table::new(&z.group));
            for t in &z.terms {
                let complement: Vec<usize> = (0..f.n()).filter(|i| !t.subset.contains(i)).collect();
                let dual = t.isotropy.dual_subgroup_in(&gt).map_err(|e| e.to_string())?;
                let expected = gt.isotropy_subgroup(&complement).map_err(|e| e.to_string())?;
                ensure(dual == expected, || {
                    format!("{f}: dual isotropy at {:?}", t.subset)
                })?;
                ensure(t.isotropy.order() == &t.complement_determinant, || {
                    format!("{f}: |G^I| ≠ |det E_Ī| at {:?}", t.subset)
                })?;
                if let Some(table) = &table {
                    let fixing = table
                        .elems
                        .iter()
                        .filter(|v| t.subset.iter().all(|&i| v[i] == 0))
                        .count();
                    ensure(BigInt::from(fixing) == t.complement_determinant, || {
                        format!("{f}: element count of G^I at {:?}", t.subset)
                    })?;
                }
            }
            Ok(z.terms.len())
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{total} contributing subsets"))
}

fn restriction_consistency(corpus: &[CorpusEntry]) -> Check {
    let results: Vec<Result<usize, String>> = corpus
        .par_iter()
        .map(|e| {
            let f = &e.polynomial;
            let err = |e: saito_core::Error| e.to_string();
            let z = equivariant_zeta(f).map_err(err)?;
            let g = &z.group;
            let gt = symmetry_group(f, Side::Transposed);
            let h = g.monodromy().map_err(err)?;
            let cyclic = g.subgroup_generated_by(&[h]).map_err(err)?;
            let dual = cyclic.dual_subgroup_in(&gt).map_err(err)?;
            let small = dual
                .as_group()
                .subgroups_of_order_at_most(&BigInt::from(12))
                .map_err(err)?;
            let table = Table::new(g);
            let strata: Vec<(BigInt, Vec<usize>)> = z
                .terms
                .iter()
                .map(|t| {
                    (
                        t.coefficient.clone(),
                        table.cosets(&table.key_generators(&t.isotropy)),
                    )
                })
                .collect();
            for s in &small {
                let big = s.in_group(&gt).map_err(err)?.dual_subgroup_in(g).map_err(err)?;
                ensure(big.contains(&cyclic) && big.index() == *s.order(), || {
                    format!("{f}: {big:?} is not an overgroup of <h> of index {}", s.order())
                })?;
                let target = big.as_group();
                let members = table.members(&big);
                let mut terms = BTreeMap::new();
                for (c, cosets) in &strata {
                    from_stabilizers(
                        &table,
                        &target,
                        &orbit_stabilizers(&table, cosets, &members),
                        c,
                        &mut terms,
                    );
                }
                let brute = element(&target, terms);
                let restricted = z.equivariant.restrict(&big).map_err(err)?;
                ensure(restricted == brute, || {
                    format!("{f}: Res to {big:?} is {restricted}, orbits give {brute}")
                })?;
                let direct = equivariant_zeta_over(f, &big).map_err(err)?;
                ensure(direct == brute, || format!("{f}: zeta over {big:?} is {direct}"))?;
            }
            Ok(small.len())
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{total} overgroups of <h> of index ≤ 12"))
}

fn main() -> ExitCode {
    let corpus = enumerate::corpus(&config()).expect("corpus").entries;
    let criteria: [Criterion; 8] = [
        ("1 theorem suite", Box::new(theorem_suite)),
        ("2 corollary suite", Box::new(|| corollary_suite(&corpus))),
        ("3 duality algebra", Box::new(|| duality_algebra(&corpus))),
        (
            "4 burnside arithmetic oracle",
            Box::new(|| burnside_oracle(&corpus)),
        ),
        (
            "5 classical zeta cross-checks",
            Box::new(|| classical_checks(&corpus)),
        ),
        (
            "6 correspondence round trip",
            Box::new(|| correspondence(&corpus)),
        ),
        ("7 isotropy duality", Box::new(|| isotropy_lemma(&corpus))),
        (
            "8 restriction consistency",
            Box::new(|| restriction_consistency(&corpus)),
        ),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
