//! Invariants on random small quiver algebras and posets.

mod common;

use proptest::prelude::*;
use serde_json::json;

use common::{det, v_all_ones};
use strata::compat::idempotent_for_labels;
use strata::input::{export, from_value, same_algebra, AlgebraFile};
use strata::modules::{dual, iso_test, projective};
use strata::strat::{bgg_reciprocity, LabelPoset, StratDatum, Verdict};
use strata::vmult::{v_matrix_from_algebra, v_matrix_from_tables, MultTables};

#[derive(Clone, Debug)]
struct Shape {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
    loewy: usize,
    order: Vec<(usize, usize)>,
}

fn shape() -> impl Strategy<Value = Shape> {
    (2usize..=3)
        .prop_flat_map(|n| {
            let arrow = (0..n, 0..n).prop_filter("no loops", |(s, t)| s != t);
            (
                Just(n),
                prop::collection::vec(arrow, 1..=4),
                2usize..=3,
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(any::<bool>(), 3),
            )
        })
        .prop_map(|(n, arrows, loewy, perm, keep)| {
            let mut order = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if keep[k] {
                        order.push((perm[i], perm[j]));
                    }
                    k += 1;
                }
            }
            Shape {
                vertices: n,
                arrows,
                loewy,
                order,
            }
        })
}

/// Path algebra modulo all paths of length `loewy`.
fn build(s: &Shape) -> AlgebraFile {
    let name = |v: usize| (v + 1).to_string();
    let arrows: Vec<_> = s
        .arrows
        .iter()
        .enumerate()
        .map(|(i, (a, b))| json!([format!("x{i}"), name(*a), name(*b)]))
        .collect();
    let mut paths: Vec<Vec<usize>> = (0..s.arrows.len()).map(|i| vec![i]).collect();
    for _ in 1..s.loewy {
        paths = paths
            .iter()
            .flat_map(|p| {
                let end = s.arrows[*p.last().unwrap()].1;
                (0..s.arrows.len())
                    .filter(move |&j| s.arrows[j].0 == end)
                    .map(move |j| {
                        let mut q = p.clone();
                        q.push(j);
                        q
                    })
            })
            .collect();
    }
    let relations: Vec<_> = paths
        .iter()
        .map(|p| {
            let word: Vec<String> = p.iter().rev().map(|i| format!("x{i}")).collect();
            json!([[1, word]])
        })
        .collect();
    let order: Vec<_> = s.order.iter().map(|(a, b)| json!([name(*a), name(*b)])).collect();
    let v = json!({
        "field": "Q",
        "presentation": {
            "vertices": (0..s.vertices).map(name).collect::<Vec<_>>(),
            "arrows": arrows,
            "relations": relations,
            "max_path_length": s.loewy + 1,
        },
        "order": order,
    });
    from_value(&v).expect("random algebra compiles")
}

fn subsets(labels: &[String]) -> Vec<Vec<String>> {
    (1..(1usize << labels.len()) - 1)
        .map(|m| {
            (0..labels.len())
                .filter(|i| m >> i & 1 == 1)
                .map(|i| labels[i].clone())
                .collect()
        })
        .collect()
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ideal_and_quotient_dims_add_up(s in shape()) {
        let f = build(&s);
        let a = &f.algebra;
        for set in subsets(a.labels()) {
            let e = idempotent_for_labels(a, &set).unwrap();
            let (q, _) = a.quotient(&e).unwrap();
            prop_assert_eq!(a.idempotent_ideal(&e).dim() + q.dim(), a.dim());
        }
    }

    #[test]
    fn double_dual_is_identity(s in shape()) {
        let f = build(&s);
        let a = &f.algebra;
        for l in a.labels() {
            let p = projective(a, l).unwrap();
            prop_assert!(iso_test(a, &dual(&dual(&p)), &p).is_iso());
        }
    }

    #[test]
    fn export_round_trip(s in shape()) {
        let f = build(&s);
        let back = from_value(&export(&f.algebra, &f.poset, Some("random"))).unwrap();
        prop_assert!(same_algebra(&f.algebra, &back.algebra));
        prop_assert_eq!(back.poset.relation(), f.poset.relation());
    }

    #[test]
    fn filtrations_agree_with_ext_oracle(s in shape()) {
        let f = build(&s);
        let d = StratDatum::new(&f.algebra, &f.poset).unwrap();
        if d.left_ss().is_yes() {
            let mut mods: Vec<_> = d.left.projectives.clone();
            mods.extend(d.left.standard.iter().cloned());
            mods.extend(d.left.proper_standard.iter().cloned());
            for x in &mods {
                let greedy = d.delta_filtration(x).verdict();
                if greedy != Verdict::Undetermined {
                    prop_assert_eq!(greedy.is_yes(), d.ext_oracle_delta(x));
                }
            }
        }
    }

    #[test]
    fn bgg_reciprocity_when_stratified(s in shape()) {
        let f = build(&s);
        let d = StratDatum::new(&f.algebra, &f.poset).unwrap();
        if d.left_ss().is_yes() {
            let r = bgg_reciprocity(&d).unwrap();
            prop_assert!(r.holds);
        }
    }

    #[test]
    fn v_from_algebra_is_unitriangular(s in shape()) {
        let f = build(&s);
        let d = StratDatum::new(&f.algebra, &f.poset).unwrap();
        if let Ok(v) = v_matrix_from_algebra(&d) {
            prop_assert!(v.is_unitriangular(&f.poset));
            prop_assert_eq!(det(&v.rows), 1);
        }
    }

    #[test]
    fn v_all_ones_matches_recursion(s in shape()) {
        let labels: Vec<String> = (1..=s.vertices).map(|i| i.to_string()).collect();
        let pairs: Vec<(String, String)> = s.order.iter().map(|(a, b)| (labels[*a].clone(), labels[*b].clone())).collect();
        let poset = LabelPoset::from_pairs(labels, &pairs).unwrap();
        let v = v_matrix_from_tables(&MultTables::all_ones(&poset)).unwrap();
        prop_assert_eq!(&v.rows, &v_all_ones(poset.relation()));
        prop_assert!(v.is_unitriangular(&poset));
        prop_assert_eq!(det(&v.rows), 1);
    }
}
