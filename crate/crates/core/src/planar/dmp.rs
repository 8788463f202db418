//! Path-addition embedding of a 2-connected block (Demoucron, Malgrange
//! and Pertuiset). Faces are kept as oriented vertex cycles; each step
//! embeds a path of some fragment into one admissible face, preferring a
//! fragment with a single admissible face. A fragment with no admissible
//! face certifies non-planarity.

use std::collections::VecDeque;

use super::blocks::Block;
use crate::graph::{bit, Bits};

enum Fragment {
    Chord(usize, usize),
    Piece { members: u64 },
}

/// Oriented faces of a planar embedding of `block`, or `None` if the block
/// is not planar. The block must have at least three vertices.
pub(crate) fn embed_block(block: &Block) -> Option<Vec<Vec<usize>>> {
    let n_vertices = block.vertices.count_ones() as usize;
    debug_assert!(n_vertices >= 3);
    if block.edges > 3 * n_vertices - 6 {
        return None;
    }
    let badj = &block.adj;
    let cycle = initial_cycle(block);
    let mut placed = 0u64;
    let mut hadj = vec![0u64; badj.len()];
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        placed |= bit(a);
        hadj[a] |= bit(b);
        hadj[b] |= bit(a);
    }
    let mut embedded = cycle.len();
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    while embedded < block.edges {
        let fragments = fragments(badj, &hadj, placed, block.vertices);
        let face_masks: Vec<u64> = faces.iter().map(|f| f.iter().fold(0, |m, &v| m | bit(v))).collect();

        let mut choice: Option<(usize, usize, usize)> = None; // (count, fragment, face)
        for (fi, (_, attach)) in fragments.iter().enumerate() {
            let mut count = 0;
            let mut first = usize::MAX;
            for (k, &fm) in face_masks.iter().enumerate() {
                if fm & attach == *attach {
                    if first == usize::MAX {
                        first = k;
                    }
                    count += 1;
                }
            }
            if count == 0 {
                return None;
            }
            if choice.is_none_or(|c| count < c.0) {
                choice = Some((count, fi, first));
                if count == 1 {
                    break;
                }
            }
        }
        let (_, fi, face) = choice.expect("at least one fragment remains");
        let (frag, attach) = &fragments[fi];
        let path = fragment_path(badj, frag, *attach, placed);
        for w in path.windows(2) {
            hadj[w[0]] |= bit(w[1]);
            hadj[w[1]] |= bit(w[0]);
            placed |= bit(w[0]) | bit(w[1]);
        }
        embedded += path.len() - 1;
        let (f1, f2) = split_face(&faces[face], &path);
        faces[face] = f1;
        faces.push(f2);
    }
    Some(faces)
}

fn initial_cycle(block: &Block) -> Vec<usize> {
    let a = block.vertices.trailing_zeros() as usize;
    let b = block.adj[a].trailing_zeros() as usize;
    // BFS from b to a avoiding the edge ab
    let mut parent = vec![usize::MAX; block.adj.len()];
    let mut queue = VecDeque::from([b]);
    parent[b] = b;
    while let Some(x) = queue.pop_front() {
        for y in Bits(block.adj[x]) {
            if parent[y] != usize::MAX || (x == b && y == a) {
                continue;
            }
            parent[y] = x;
            if y == a {
                queue.clear();
                break;
            }
            queue.push_back(y);
        }
    }
    let mut cycle = vec![a];
    let mut x = parent[a];
    while x != b {
        cycle.push(x);
        x = parent[x];
    }
    cycle.push(b);
    cycle
}

fn fragments(badj: &[u64], hadj: &[u64], placed: u64, vertices: u64) -> Vec<(Fragment, u64)> {
    let mut out = Vec::new();
    for u in Bits(placed) {
        for w in Bits(badj[u] & placed & !hadj[u]) {
            if u < w {
                out.push((Fragment::Chord(u, w), bit(u) | bit(w)));
            }
        }
    }
    let mut rest = vertices & !placed;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        let mut comp = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= badj[v];
            }
            next &= rest & !comp;
            comp |= next;
            frontier = next;
        }
        rest &= !comp;
        let attach = Bits(comp).fold(0, |m, v| m | badj[v]) & placed;
        out.push((Fragment::Piece { members: comp }, attach));
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(badj: &[u64], frag: &Fragment, attach: u64, placed: u64) -> Vec<usize> {
    match *frag {
        Fragment::Chord(u, w) => vec![u, w],
        Fragment::Piece { members } => {
            let a = attach.trailing_zeros() as usize;
            let mut parent = vec![usize::MAX; badj.len()];
            let mut queue = VecDeque::new();
            for c in Bits(badj[a] & members) {
                parent[c] = c;
                queue.push_back(c);
            }
            while let Some(x) = queue.pop_front() {
                let others = badj[x] & placed & !bit(a);
                if others != 0 {
                    let b = others.trailing_zeros() as usize;
                    let mut inner = vec![x];
                    let mut y = x;
                    while parent[y] != y {
                        y = parent[y];
                        inner.push(y);
                    }
                    inner.reverse();
                    let mut path = vec![a];
                    path.extend(inner);
                    path.push(b);
                    return path;
                }
                for y in Bits(badj[x] & members) {
                    if parent[y] == usize::MAX {
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            unreachable!("fragment of a 2-connected block has two attachments")
        }
    }
}

/// Splits the oriented face cycle `face` by `path` (whose ends lie on the
/// face) into two oriented cycles.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().expect("non-empty path");
    let len = face.len();
    let ia = face.iter().position(|&v| v == a).expect("a on face");
    let ib = face.iter().position(|&v| v == b).expect("b on face");
    let inner = &path[1..path.len() - 1];

    let mut f1 = Vec::new();
    let mut i = ia;
    loop {
        f1.push(face[i]);
        if i == ib {
            break;
        }
        i = (i + 1) % len;
    }
    f1.extend(inner.iter().rev());

    let mut f2 = Vec::new();
    let mut i = ib;
    loop {
        f2.push(face[i]);
        if i == ia {
            break;
        }
        i = (i + 1) % len;
    }
    f2.extend(inner.iter());
    (f1, f2)
}
