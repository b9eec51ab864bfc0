#![allow(dead_code)]

use proptest::prelude::*;
use ratherm::field::FieldConfig;
use ratherm::problem::HermiteData;

pub const Q: FieldConfig = FieldConfig::Rationals;

pub fn gf(p: u64) -> FieldConfig {
    FieldConfig::prime(p).unwrap()
}

/// Shape with total multiplicity in 1..=max_n.
pub fn shape(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=4)
        .prop_filter("total multiplicity", move |s| s.iter().sum::<usize>() <= max_n)
}

/// Data with nodes in -3..=3 (distinct mod 7) and values in -2..=2, so that degenerate
/// configurations are common.
pub fn small_data(field: FieldConfig, max_n: usize) -> impl Strategy<Value = HermiteData> {
    shape(max_n)
        .prop_flat_map(move |s| {
            let n: usize = s.iter().sum();
            let l = s.len();
            let nodes = prop::sample::subsequence((-3i64..=3).collect::<Vec<_>>(), l).prop_shuffle();
            let values: Vec<_> = s
                .iter()
                .map(|&ni| prop::collection::vec(-2i64..=2, ni))
                .collect();
            (Just(s), 1..=n, nodes, values)
        })
        .prop_map(move |(_, k, nodes, values)| {
            HermiteData::new(
                field,
                nodes.into_iter().map(|u| field.from_i64(u)).collect(),
                values
                    .into_iter()
                    .map(|vs| vs.into_iter().map(|v| field.from_i64(v)).collect())
                    .collect(),
                k,
            )
            .unwrap()
        })
}

pub fn golden() -> HermiteData {
    HermiteData::new(
        Q,
        vec![Q.from_i64(1), Q.from_i64(2)],
        vec![vec![Q.one(), Q.zero()], vec![Q.zero()]],
        2,
    )
    .unwrap()
}
