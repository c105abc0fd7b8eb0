//! Todd–Coxeter coset enumeration (HLT strategy with coincidence handling)
//! over the trivial subgroup, giving the order of a finitely presented group.

use crate::error::{Error, Result};

/// Generator `g` is letter `2g`, its inverse `2g + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<usize>>,
}

pub fn gen(g: usize) -> usize {
    2 * g
}

pub fn inv_letter(x: usize) -> usize {
    x ^ 1
}

/// Inverse of a word.
pub fn inverse_word(word: &[usize]) -> Vec<usize> {
    word.iter().rev().map(|&x| inv_letter(x)).collect()
}

const NONE: usize = usize::MAX;

struct CosetTable {
    cols: usize,
    rows: Vec<Vec<usize>>,
    parent: Vec<usize>,
    cap: usize,
    live: usize,
}

impl CosetTable {
    fn new(cols: usize, cap: usize) -> Self {
        CosetTable {
            cols,
            rows: vec![vec![NONE; cols]],
            parent: vec![0],
            cap,
            live: 1,
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.rows.len() >= self.cap {
            return Err(Error::CapExceeded(format!(
                "coset enumeration exceeds {} rows",
                self.cap
            )));
        }
        let d = self.rows.len();
        self.rows.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.rows[c][x] = d;
        self.rows[d][inv_letter(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = c;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop] = keep;
            self.live -= 1;
            queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.rows[g][x];
                if d == NONE {
                    continue;
                }
                self.rows[d][inv_letter(x)] = NONE;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.rows[mu][x] != NONE {
                    let t = self.rows[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.rows[nu][inv_letter(x)] != NONE {
                    let t = self.rows[nu][inv_letter(x)];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.rows[mu][x] = nu;
                    self.rows[nu][inv_letter(x)] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, word.len() as isize - 1);
        loop {
            while i <= j && self.rows[f][word[i as usize]] != NONE {
                f = self.rows[f][word[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.rows[b][inv_letter(word[j as usize])] != NONE {
                b = self.rows[b][inv_letter(word[j as usize])];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = word[i as usize];
                self.rows[f][x] = b;
                self.rows[b][inv_letter(x)] = f;
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }
}

/// Order of the group given by `presentation`, failing with
/// [`Error::CapExceeded`] once more than `cap` cosets are defined.
pub fn group_order(presentation: &Presentation, cap: usize) -> Result<usize> {
    let cols = 2 * presentation.generators;
    if cols == 0 {
        return Ok(1);
    }
    let mut table = CosetTable::new(cols, cap.max(1));
    let mut c = 0;
    while c < table.rows.len() {
        for r in &presentation.relators {
            if !table.is_live(c) {
                break;
            }
            table.scan_and_fill(c, r)?;
        }
        if table.is_live(c) {
            for x in 0..cols {
                if table.rows[c][x] == NONE {
                    table.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    Ok(table.live)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power(g: usize, k: usize) -> Vec<usize> {
        vec![gen(g); k]
    }

    fn alternating(a: usize, b: usize, m: usize) -> Vec<usize> {
        (0..m)
            .map(|i| if i % 2 == 0 { gen(a) } else { gen(b) })
            .collect()
    }

    fn braid(a: usize, b: usize, m: usize) -> Vec<usize> {
        let mut w = alternating(a, b, m);
        w.extend(inverse_word(&alternating(b, a, m)));
        w
    }

    #[test]
    fn cyclic_and_dihedral() {
        let cyclic = Presentation {
            generators: 1,
            relators: vec![power(0, 7)],
        };
        assert_eq!(group_order(&cyclic, 100).unwrap(), 7);
        let dihedral = Presentation {
            generators: 2,
            relators: vec![power(0, 2), power(1, 2), braid(0, 1, 5)],
        };
        assert_eq!(group_order(&dihedral, 1000).unwrap(), 10);
    }

    #[test]
    fn symmetric_group() {
        let s4 = Presentation {
            generators: 3,
            relators: vec![
                power(0, 2),
                power(1, 2),
                power(2, 2),
                braid(0, 1, 3),
                braid(1, 2, 3),
                braid(0, 2, 2),
            ],
        };
        assert_eq!(group_order(&s4, 10_000).unwrap(), 24);
    }

    #[test]
    fn collapse_and_cap() {
        // <a, b | a^2, b^3, ab = ba, a = b> is trivial
        let trivial = Presentation {
            generators: 2,
            relators: vec![
                power(0, 2),
                power(1, 3),
                braid(0, 1, 2),
                vec![gen(0), inv_letter(gen(1))],
            ],
        };
        assert_eq!(group_order(&trivial, 1000).unwrap(), 1);
        // the infinite dihedral group never closes
        let infinite = Presentation {
            generators: 2,
            relators: vec![power(0, 2), power(1, 2)],
        };
        assert!(matches!(
            group_order(&infinite, 500),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn shephard_group() {
        // G(3,1,2): s^3 = t^2 = 1, stst = tsts
        let g = Presentation {
            generators: 2,
            relators: vec![power(0, 3), power(1, 2), braid(0, 1, 4)],
        };
        assert_eq!(group_order(&g, 10_000).unwrap(), 18);
    }
}
