//! Brute-force circle graph recognition over double occurrence words.

use serde::Serialize;

use super::z3::LoopedSimpleGraph;
use crate::error::{Error, Result};

pub const CIRCLE_MAX_VERTICES: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircleCheck {
    pub is_circle: bool,
    /// A double occurrence word over the vertices of the input whose
    /// interlacement graph is the input.
    pub word: Option<Vec<String>>,
    /// Canonical words whose interlacement graph was compared.
    pub words_examined: u64,
}

/// Words on symbols `0..n` in which symbols first occur in increasing order.
fn normalize(w: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 16];
    let mut next = 0u8;
    w.iter()
        .map(|&s| {
            if map[s as usize] == u8::MAX {
                map[s as usize] = next;
                next += 1;
            }
            map[s as usize]
        })
        .collect()
}

/// Least normalized word among the rotations and reflections of `w`.
fn is_canonical(w: &[u8]) -> bool {
    let len = w.len();
    let mut buf = vec![0u8; len];
    for r in 0..len {
        for rev in [false, true] {
            for (i, b) in buf.iter_mut().enumerate() {
                *b = if rev { w[(r + len - i) % len] } else { w[(r + i) % len] };
            }
            if normalize(&buf).as_slice() < w {
                return false;
            }
        }
    }
    true
}

fn matchings(n: usize, word: &mut Vec<u8>, next: u8, out: &mut dyn FnMut(&[u8]) -> bool) -> bool {
    let Some(p) = word.iter().position(|&s| s == u8::MAX) else {
        return out(word);
    };
    for q in p + 1..2 * n {
        if word[q] == u8::MAX {
            word[p] = next;
            word[q] = next;
            if matchings(n, word, next + 1, out) {
                return true;
            }
            word[p] = u8::MAX;
            word[q] = u8::MAX;
        }
    }
    false
}

fn interlacement_masks(w: &[u8], n: usize) -> Vec<u16> {
    let mut pos = vec![[usize::MAX; 2]; n];
    for (i, &s) in w.iter().enumerate() {
        let p = &mut pos[s as usize];
        if p[0] == usize::MAX {
            p[0] = i;
        } else {
            p[1] = i;
        }
    }
    let mut adj = vec![0u16; n];
    for u in 0..n {
        for v in u + 1..n {
            let [a, b] = pos[u];
            let inside = pos[v].iter().filter(|&&p| a < p && p < b).count();
            if inside == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
    }
    adj
}

/// Extends `map` (word symbol to graph vertex) to an isomorphism.
fn extend_iso(h: &[u16], g: &[u16], map: &mut Vec<usize>, used: u16) -> bool {
    let k = map.len();
    if k == h.len() {
        return true;
    }
    for x in 0..g.len() {
        if used >> x & 1 == 1 || h[k].count_ones() != g[x].count_ones() {
            continue;
        }
        let ok = (0..k).all(|j| (h[k] >> j & 1) == (g[x] >> map[j] & 1));
        if ok {
            map.push(x);
            if extend_iso(h, g, map, used | 1 << x) {
                return true;
            }
            map.pop();
        }
    }
    false
}

/// Searches all double occurrence words on `|V(g)|` symbols, up to rotation
/// and reflection, for one whose interlacement graph is isomorphic to `g`.
pub fn is_circle_graph_bruteforce(g: &LoopedSimpleGraph) -> Result<CircleCheck> {
    if g.has_loops() {
        return Err(Error::Contract("circle recognition expects a loopless graph".into()));
    }
    let n = g.vertex_count();
    if n > CIRCLE_MAX_VERTICES {
        return Err(Error::SizeCap {
            what: "circle graph search (vertices)",
            required: n as u128,
            cap: CIRCLE_MAX_VERTICES as u128,
        });
    }
    if n == 0 {
        return Ok(CircleCheck {
            is_circle: true,
            word: Some(vec![]),
            words_examined: 0,
        });
    }
    let vs = g.vertices();
    let target: Vec<u16> = vs
        .iter()
        .map(|u| {
            vs.iter()
                .enumerate()
                .filter(|(_, v)| g.adjacent(u, v))
                .fold(0u16, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let mut degrees: Vec<u32> = target.iter().map(|m| m.count_ones()).collect();
    degrees.sort_unstable();
    let mut examined = 0u64;
    let mut found: Option<Vec<String>> = None;
    let mut word = vec![u8::MAX; 2 * n];
    matchings(n, &mut word, 0, &mut |w| {
        if !is_canonical(w) {
            return false;
        }
        examined += 1;
        let h = interlacement_masks(w, n);
        let mut hd: Vec<u32> = h.iter().map(|m| m.count_ones()).collect();
        hd.sort_unstable();
        if hd != degrees {
            return false;
        }
        let mut map = Vec::with_capacity(n);
        if extend_iso(&h, &target, &mut map, 0) {
            found = Some(w.iter().map(|&s| vs[map[s as usize]].clone()).collect());
            return true;
        }
        false
    });
    Ok(CircleCheck {
        is_circle: found.is_some(),
        word: found,
        words_examined: examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::from_word;
    use crate::multimatroid::interlacement_graph;

    fn double_factorial(n: usize) -> u64 {
        (1..=2 * n as u64 - 1).step_by(2).product()
    }

    #[test]
    fn matchings_are_counted() {
        for n in 1..=5 {
            let mut count = 0u64;
            let mut w = vec![u8::MAX; 2 * n];
            matchings(n, &mut w, 0, &mut |_| {
                count += 1;
                false
            });
            assert_eq!(count, double_factorial(n));
        }
    }

    #[test]
    fn canonical_words_cover_every_class() {
        // Every word's dihedral class contains exactly one canonical word.
        let n = 4;
        let mut w = vec![u8::MAX; 2 * n];
        let mut all = Vec::new();
        matchings(n, &mut w, 0, &mut |x| {
            all.push(x.to_vec());
            false
        });
        for x in &all {
            let len = x.len();
            let images: std::collections::BTreeSet<Vec<u8>> = (0..len)
                .flat_map(|r| {
                    [false, true].map(|rev| {
                        let img: Vec<u8> = (0..len)
                            .map(|i| if rev { x[(r + len - i) % len] } else { x[(r + i) % len] })
                            .collect();
                        normalize(&img)
                    })
                })
                .collect();
            assert_eq!(images.iter().filter(|y| is_canonical(y)).count(), 1);
        }
    }

    #[test]
    fn small_graphs() {
        let single = LoopedSimpleGraph::new(["v"], vec![], Vec::<String>::new()).unwrap();
        let r = is_circle_graph_bruteforce(&single).unwrap();
        assert_eq!(r.word, Some(vec!["v".to_string(), "v".to_string()]));
        let c4 = LoopedSimpleGraph::cycle(4);
        let r = is_circle_graph_bruteforce(&c4).unwrap();
        assert!(r.is_circle);
        let (f, c) = from_word(&r.word.unwrap()).unwrap();
        assert_eq!(interlacement_graph(&f, &c).unwrap(), c4);
    }

    #[test]
    fn loops_and_size_are_rejected() {
        let looped = LoopedSimpleGraph::new(["v"], vec![], ["v"]).unwrap();
        assert!(is_circle_graph_bruteforce(&looped).is_err());
        let big = LoopedSimpleGraph::cycle(8);
        assert!(is_circle_graph_bruteforce(&big).unwrap_err().is_size_cap());
    }
}
