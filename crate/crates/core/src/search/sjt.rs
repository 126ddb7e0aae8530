/// Plain-changes enumeration (Steinhaus–Johnson–Trotter, as Knuth's
/// Algorithm P): every permutation of `n` items is reached from the previous
/// one by swapping two adjacent items.
#[derive(Clone, Debug)]
pub(crate) struct PlainChanges {
    n: usize,
    c: Vec<usize>,
    o: Vec<isize>,
    done: bool,
}

impl PlainChanges {
    pub fn new(n: usize) -> Self {
        PlainChanges {
            n,
            c: vec![0; n + 1],
            o: vec![1; n + 1],
            done: n <= 1,
        }
    }

    /// The next transposition as the lower of the two 0-based indices, or
    /// `None` once all `n!` permutations have been produced.
    pub fn next_swap(&mut self) -> Option<usize> {
        if self.done {
            return None;
        }
        let mut j = self.n;
        let mut s = 0;
        loop {
            let q = self.c[j] as isize + self.o[j];
            if q < 0 {
                self.o[j] = -self.o[j];
                j -= 1;
                continue;
            }
            let q = q as usize;
            if q == j {
                if j == 1 {
                    self.done = true;
                    return None;
                }
                s += 1;
                self.o[j] = -self.o[j];
                j -= 1;
                continue;
            }
            let a = j - self.c[j] + s;
            let b = j - q + s;
            self.c[j] = q;
            return Some(a.min(b) - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn walk(n: usize) -> Vec<Vec<usize>> {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut seen = vec![perm.clone()];
        let mut pc = PlainChanges::new(n);
        while let Some(i) = pc.next_swap() {
            assert!(i + 1 < n);
            perm.swap(i, i + 1);
            seen.push(perm.clone());
        }
        seen
    }

    #[test]
    fn visits_every_permutation_once() {
        for (n, fact) in [(0, 1), (1, 1), (2, 2), (3, 6), (4, 24), (5, 120), (6, 720), (7, 5040)] {
            let perms = walk(n);
            assert_eq!(perms.len(), fact, "n = {n}");
            let distinct: HashSet<_> = perms.into_iter().collect();
            assert_eq!(distinct.len(), fact);
        }
    }

    #[test]
    fn three_items_in_plain_change_order() {
        let perms = walk(3);
        assert_eq!(
            perms,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![2, 0, 1],
                vec![2, 1, 0],
                vec![1, 2, 0],
                vec![1, 0, 2]
            ]
        );
    }
}
