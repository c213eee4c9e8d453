use std::collections::BTreeSet;

use spanbound::canon::canonical_form;
use spanbound::enumgen::{generate_shard, shard_space, ShardDescriptor};
use spanbound::{count_graphs, generate_graphs, SimpleGraph};

fn labeled_class_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut keys = BTreeSet::new();
    for bits in 0u32..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &p)| p);
        keys.insert(
            canonical_form(&SimpleGraph::from_edges(n, edges).unwrap())
                .unwrap()
                .key,
        );
    }
    keys.len()
}

#[test]
fn counts_match_labeled_bucketing() {
    for n in 1..=6 {
        assert_eq!(
            count_graphs(n, n.saturating_sub(1)).unwrap() as usize,
            labeled_class_count(n),
            "n = {n}"
        );
    }
}

#[test]
fn known_class_counts() {
    let want = [1u64, 2, 4, 11, 34, 156, 1044, 12346];
    for (i, &w) in want.iter().enumerate() {
        let c = i + 1;
        assert_eq!(count_graphs(c, c - 1).unwrap(), w);
    }
    assert_eq!(generate_graphs(2, 1).unwrap().len(), 2);
    assert_eq!(generate_graphs(3, 2).unwrap().len(), 4);
}

#[test]
fn no_duplicates_and_sorted_up_to_eight() {
    for c in 1..=8 {
        let graphs = generate_graphs(c, c - 1).unwrap();
        for w in graphs.windows(2) {
            assert!(w[0].key < w[1].key, "c = {c}");
        }
        for g in graphs.iter().take(200) {
            assert_eq!(canonical_form(&g.graph).unwrap().key, g.key);
        }
    }
}

#[test]
fn degree_cap_is_respected() {
    for c in 2..=7 {
        for cap in 0..c {
            let graphs = generate_graphs(c, cap).unwrap();
            assert!(graphs.iter().all(|g| g.graph.max_degree() <= cap));
            let unrestricted = generate_graphs(c, c - 1).unwrap();
            let expected = unrestricted
                .iter()
                .filter(|g| g.graph.max_degree() <= cap)
                .count();
            assert_eq!(graphs.len(), expected, "c = {c}, cap = {cap}");
        }
    }
}

#[test]
fn shards_partition_the_stream() {
    let full = generate_graphs(7, 6).unwrap();
    let depth = 4;
    let space = shard_space(depth, 6).unwrap();
    let mut merged = Vec::new();
    for start in (0..space).step_by(3) {
        let shard = ShardDescriptor {
            depth,
            start,
            end: (start + 3).min(space),
        };
        let text = shard.to_string();
        let back: ShardDescriptor = text.parse().unwrap();
        assert_eq!(back, shard);
        merged.extend(generate_shard(7, 6, back).unwrap());
    }
    merged.sort();
    assert_eq!(merged, full);
}
