use lossy_oracles::{cp, cvc, df, ola, pvc, steiner, vc};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let len = pairs.len();
        (Just(n), proptest::collection::vec(0u8..4, len)).prop_map(move |(n, picks)| {
            let mut edges = Vec::new();
            for (&(u, v), &c) in pairs.iter().zip(&picks) {
                match c {
                    2 => edges.push((u, v)),
                    3 => edges.extend([(u, v), (u, v)]),
                    _ => {}
                }
            }
            (n, edges)
        })
    })
}

fn relabelled(
    (n, edges): (usize, Vec<(usize, usize)>),
) -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<usize>)> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |perm| (n, edges.clone(), perm))
}

fn apply(perm: &[usize], edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect()
}

fn simple(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut e = edges.to_vec();
    e.sort_unstable();
    e.dedup();
    e
}

proptest! {
    #[test]
    fn graph_oracles_ignore_labels((n, edges, perm) in graph(8).prop_flat_map(relabelled), k in 0usize..4) {
        let moved = apply(&perm, &edges);

        let a = cvc::exact_cvc(n, &edges, k).unwrap();
        let b = cvc::exact_cvc(n, &moved, k).unwrap();
        prop_assert_eq!(a.value, b.value);
        if a.value.is_some() {
            prop_assert!(cvc::is_cvc(n, &edges, &a.witness));
        }

        let a = cp::exact_cp(n, &edges, k).unwrap();
        let b = cp::exact_cp(n, &moved, k).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert!(cp::is_packing(n, &edges, &a.witness));
        prop_assert_eq!(a.witness.len(), a.value);

        let a = pvc::exact_pvc(n, &edges, k).unwrap();
        let b = pvc::exact_pvc(n, &moved, k).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert!(a.witness.len() <= k);
        prop_assert_eq!(pvc::covered(&edges, &a.witness), a.value);

        let a = vc::min_vertex_cover(n, &edges).unwrap();
        let b = vc::min_vertex_cover(n, &moved).unwrap();
        prop_assert_eq!(a.len(), b.len());
        prop_assert!(edges.iter().all(|(u, v)| a.contains(u) || a.contains(v)));

        let a = ola::exact_ola(n, &simple(&edges)).unwrap();
        let b = ola::exact_ola_cuts(n, &simple(&moved)).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(ola::layout_value(n, &simple(&edges), &a.witness), Some(a.value));
    }

    #[test]
    fn steiner_ignores_labels(
        (n, edges, perm) in graph(8).prop_flat_map(relabelled),
        weights in proptest::collection::vec(1u64..10, 64),
        pick in proptest::collection::vec(any::<bool>(), 8),
    ) {
        let weighted: Vec<(usize, usize, u64)> =
            simple(&edges).iter().zip(&weights).map(|(&(u, v), &w)| (u, v, w)).collect();
        let moved: Vec<(usize, usize, u64)> = weighted.iter().map(|&(u, v, w)| (perm[u], perm[v], w)).collect();
        let mut terminals: Vec<usize> = (0..n).filter(|&v| pick[v]).collect();
        if terminals.is_empty() {
            terminals.push(0);
        }
        let dist = steiner::shortest_paths(n, &weighted);
        prop_assume!(terminals.iter().all(|&t| dist[terminals[0]][t] < u64::MAX / 4));
        let a = steiner::exact_steiner(n, &weighted, &terminals).unwrap();
        let moved_terminals: Vec<usize> = terminals.iter().map(|&t| perm[t]).collect();
        let b = steiner::exact_steiner(n, &moved, &moved_terminals).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert_eq!(a.witness.iter().map(|e| e.2).sum::<u64>(), a.value);
    }

    #[test]
    fn df_ignores_letter_names(text in "[abcd]{0,24}", shift in 1u8..4) {
        let chars: Vec<char> = text.chars().collect();
        let renamed: Vec<char> = chars.iter().map(|&c| (b'a' + (c as u8 - b'a' + shift) % 4) as char).collect();
        let a = df::exact_df(&chars).unwrap();
        let b = df::exact_df(&renamed).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert!(df::is_factor_set(&chars, &a.witness));
        prop_assert_eq!(a.witness.len(), a.value);
    }
}
