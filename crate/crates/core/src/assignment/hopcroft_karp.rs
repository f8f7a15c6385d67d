use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum bipartite matching between `n` left and `n` right vertices.
///
/// Returns `match_left[i]` (the right partner of `i`, or `None`).
pub fn maximum_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut ml = vec![FREE; n_left];
    let mut mr = vec![FREE; n_right];
    let mut dist = vec![0usize; n_left];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for i in 0..n_left {
            if ml[i] == FREE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let k = mr[j];
                if k == FREE {
                    found = true;
                } else if dist[k] == usize::MAX {
                    dist[k] = dist[i] + 1;
                    queue.push_back(k);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n_left];
        for i in 0..n_left {
            if ml[i] == FREE {
                augment(i, adj, &mut ml, &mut mr, &mut dist, &mut it);
            }
        }
    }
    ml.into_iter().map(|j| (j != FREE).then_some(j)).collect()
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    ml: &mut [usize],
    mr: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[i] < adj[i].len() {
        let j = adj[i][it[i]];
        it[i] += 1;
        let k = mr[j];
        if k == FREE || (dist[k] == dist[i] + 1 && augment(k, adj, ml, mr, dist, it)) {
            ml[i] = j;
            mr[j] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

/// Whether the bipartite graph on `n + n` vertices has a perfect matching.
pub fn has_perfect_matching(adj: &[Vec<usize>]) -> bool {
    maximum_matching(adj, adj.len()).iter().all(Option::is_some)
}

/// The lexicographically smallest perfect matching of `adj` (as a
/// permutation), starting from any perfect matching `perm`.
///
/// Rows are fixed in order; for each row the smallest admissible column is
/// found by trying to re-route the current matching along an alternating path
/// that avoids already-fixed rows.
pub fn lexicographic_perfect_matching(adj: &[Vec<usize>], mut perm: Vec<usize>) -> Vec<usize> {
    let n = adj.len();
    let mut inv = vec![0usize; n];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    let mut sorted: Vec<Vec<usize>> = adj.to_vec();
    for row in &mut sorted {
        row.sort_unstable();
        row.dedup();
    }
    for i in 0..n {
        for &j in &sorted[i] {
            if perm[i] == j {
                break;
            }
            // Tentatively assign i -> j. Row k = inv[j] loses its column
            // and must reach the freed column perm[i] through an alternating
            // path among rows > i.
            let k = inv[j];
            if k < i {
                continue;
            }
            let target = perm[i];
            let mut seen = vec![false; n];
            seen[j] = true;
            let mut path = Vec::new();
            if alternating_path(k, target, i, &sorted, &perm, &inv, &mut seen, &mut path) {
                perm[i] = j;
                inv[j] = i;
                for (r, c) in path {
                    perm[r] = c;
                    inv[c] = r;
                }
                break;
            }
        }
    }
    perm
}

#[allow(clippy::too_many_arguments)]
fn alternating_path(
    row: usize,
    target: usize,
    fixed_upto: usize,
    adj: &[Vec<usize>],
    perm: &[usize],
    inv: &[usize],
    seen: &mut [bool],
    path: &mut Vec<(usize, usize)>,
) -> bool {
    for &c in &adj[row] {
        if seen[c] || c == perm[row] {
            continue;
        }
        seen[c] = true;
        if c == target {
            path.push((row, c));
            return true;
        }
        let next = inv[c];
        if next <= fixed_upto {
            continue;
        }
        if alternating_path(next, target, fixed_upto, adj, perm, inv, seen, path) {
            path.push((row, c));
            return true;
        }
    }
    false
}
