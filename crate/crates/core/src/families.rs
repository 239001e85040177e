//! Standard plane graphs used as fixtures and CLI presets.

use alloc::vec;
use alloc::vec::Vec;

use crate::embed::rotations_from_faces;
use crate::plane_graph::PlaneGraph;

fn build(n: usize, faces: &[Vec<usize>], outer: &[usize]) -> PlaneGraph {
    PlaneGraph::from_rotations(rotations_from_faces(n, faces), Some(outer)).expect("family embedding is planar")
}

/// `C_n` on `0..n`; the outer face is the walk `0, 1, ..., n-1`.
pub fn cycle(n: usize) -> PlaneGraph {
    assert!(n >= 3);
    let forward: Vec<usize> = (0..n).collect();
    let backward: Vec<usize> = (0..n).rev().collect();
    build(n, &[forward.clone(), backward], &forward)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> PlaneGraph {
    let rotations = (0..n)
        .map(|i| {
            let mut r = Vec::new();
            if i > 0 {
                r.push(i - 1);
            }
            if i + 1 < n {
                r.push(i + 1);
            }
            r
        })
        .collect();
    PlaneGraph::from_rotations(rotations, None).expect("path")
}

/// Wheel with `spokes` rim vertices `0..spokes` and hub `spokes`; the rim
/// bounds the outer face.
pub fn wheel(spokes: usize) -> PlaneGraph {
    assert!(spokes >= 3);
    let hub = spokes;
    let rim: Vec<usize> = (0..spokes).collect();
    let mut faces = vec![rim.clone()];
    for i in 0..spokes {
        faces.push(vec![hub, (i + 1) % spokes, i]);
    }
    build(spokes + 1, &faces, &rim)
}

/// `K_4`, embedded as the wheel with three spokes.
pub fn k4() -> PlaneGraph {
    wheel(3)
}

/// Two triangles `0 1 2` and `0 2 3` sharing the edge `0 2`; the outer face
/// is the 4-cycle.
pub fn diamond() -> PlaneGraph {
    build(4, &[vec![0, 1, 2, 3], vec![2, 1, 0], vec![0, 3, 2]], &[0, 1, 2, 3])
}

/// Octahedron: equator `0..4`, poles `4` and `5`. Outer face `4 1 0`.
pub fn octahedron() -> PlaneGraph {
    let mut faces = Vec::new();
    for i in 0..4 {
        faces.push(vec![4, (i + 1) % 4, i]);
        faces.push(vec![5, i, (i + 1) % 4]);
    }
    build(6, &faces, &[4, 1, 0])
}

/// Prism over `C_n`: outer cycle `0..n`, inner cycle `n..2n`, spokes
/// `i -- n+i`. The outer cycle bounds the outer face.
pub fn prism(n: usize) -> PlaneGraph {
    assert!(n >= 3);
    let outer: Vec<usize> = (0..n).collect();
    let inner: Vec<usize> = (0..n).rev().map(|i| n + i).collect();
    let mut faces = vec![outer.clone(), inner];
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push(vec![j, i, n + i, n + j]);
    }
    build(2 * n, &faces, &outer)
}

/// `rows x cols` square grid; vertex `(x, y)` has id `y * cols + x`.
pub fn square_grid(rows: usize, cols: usize) -> PlaneGraph {
    assert!(rows >= 2 && cols >= 2);
    let id = |x: usize, y: usize| y * cols + x;
    let mut rotations = Vec::with_capacity(rows * cols);
    for y in 0..rows {
        for x in 0..cols {
            let mut r = Vec::new();
            if y > 0 {
                r.push(id(x, y - 1));
            }
            if x + 1 < cols {
                r.push(id(x + 1, y));
            }
            if y + 1 < rows {
                r.push(id(x, y + 1));
            }
            if x > 0 {
                r.push(id(x - 1, y));
            }
            rotations.push(r);
        }
    }
    PlaneGraph::from_rotations(rotations, None).expect("grid is planar")
}
