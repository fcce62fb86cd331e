use std::collections::HashSet;

/// Which label sets are exactly the labels of some independent set of
/// closed intervals `(left, right, label)`. Indexed by label bitmask.
pub fn realizable_label_sets(intervals: &[(i64, i64, u32)], q: usize) -> Vec<bool> {
    assert!(q <= 20, "too many labels");
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by_key(|&i| (intervals[i].0, intervals[i].1, i));
    let ivs: Vec<(i64, i64, u32)> = order.iter().map(|&i| intervals[i]).collect();
    let mut out = vec![false; 1 << q];
    out[0] = true;
    let mut seen: HashSet<(usize, u32)> = HashSet::new();
    // state: last chosen interval (by sorted position) and label mask so far
    let mut stack: Vec<(usize, u32)> = Vec::new();
    for i in 0..ivs.len() {
        stack.push((i, 1 << ivs[i].2));
    }
    while let Some((last, mask)) = stack.pop() {
        if !seen.insert((last, mask)) {
            continue;
        }
        out[mask as usize] = true;
        for (j, iv) in ivs.iter().enumerate() {
            if iv.0 > ivs[last].1 {
                stack.push((j, mask | 1 << iv.2));
            }
        }
    }
    out
}
