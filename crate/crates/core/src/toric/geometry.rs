//! Exact planar predicates on points of the plane `x + y + z = r`, using the
//! chart `(x, y)`.

use super::JuniorPoint;

#[inline]
fn chart(p: &JuniorPoint) -> (i64, i64) {
    (p[0] as i64, p[1] as i64)
}

/// Twice the signed area of `(p, q, s)` in the chart; positive when
/// counterclockwise.
pub fn orient(p: &JuniorPoint, q: &JuniorPoint, s: &JuniorPoint) -> i64 {
    let (p0, p1) = chart(p);
    let (q0, q1) = chart(q);
    let (s0, s1) = chart(s);
    (q0 - p0) * (s1 - p1) - (q1 - p1) * (s0 - p0)
}

/// `det(w₁, w₂, w₃)` of the numerator vectors.
pub fn det3(a: &JuniorPoint, b: &JuniorPoint, c: &JuniorPoint) -> i128 {
    let [a0, a1, a2] = a.map(|x| x as i128);
    let [b0, b1, b2] = b.map(|x| x as i128);
    let [c0, c1, c2] = c.map(|x| x as i128);
    a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)
}

/// Where a point sits relative to a closed triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Outside,
    Vertex(usize),
    /// On the edge opposite to the given vertex slot.
    Edge(usize),
    Interior,
}

pub fn locate(tri: &[JuniorPoint; 3], p: &JuniorPoint) -> Location {
    if let Some(i) = tri.iter().position(|v| v == p) {
        return Location::Vertex(i);
    }
    let area = orient(&tri[0], &tri[1], &tri[2]);
    if area == 0 {
        return Location::Outside;
    }
    let sign = area.signum();
    // o[i] is the orientation against the edge opposite vertex i
    let o = [
        orient(&tri[1], &tri[2], p) * sign,
        orient(&tri[2], &tri[0], p) * sign,
        orient(&tri[0], &tri[1], p) * sign,
    ];
    if o.iter().any(|&x| x < 0) {
        return Location::Outside;
    }
    match o.iter().position(|&x| x == 0) {
        Some(i) => Location::Edge(i),
        None => Location::Interior,
    }
}

/// True when the two nondegenerate triangles have disjoint interiors.
pub fn interiors_disjoint(a: &[JuniorPoint; 3], b: &[JuniorPoint; 3]) -> bool {
    separated_by_edge(a, b) || separated_by_edge(b, a)
}

fn separated_by_edge(a: &[JuniorPoint; 3], b: &[JuniorPoint; 3]) -> bool {
    let sign = orient(&a[0], &a[1], &a[2]).signum();
    (0..3).any(|i| {
        let (u, v) = (&a[i], &a[(i + 1) % 3]);
        b.iter().all(|p| orient(u, v, p) * sign <= 0)
    })
}

/// True when `p` lies on the closed segment `uv`.
pub fn on_segment(u: &JuniorPoint, v: &JuniorPoint, p: &JuniorPoint) -> bool {
    orient(u, v, p) == 0 && (0..3).all(|i| p[i] >= u[i].min(v[i]) && p[i] <= u[i].max(v[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cofactor_determinants() {
        assert_eq!(det3(&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]).abs(), 1);
        assert_eq!(det3(&[7, 0, 0], &[4, 1, 2], &[2, 4, 1]).abs(), 49);
        assert_eq!(det3(&[5, 0, 0], &[4, 1, 0], &[4, 0, 1]).abs(), 5);
    }

    #[test]
    fn locations() {
        let t = [[2, 0, 0], [0, 2, 0], [0, 0, 2]];
        assert_eq!(locate(&t, &[1, 1, 0]), Location::Edge(2));
        assert_eq!(locate(&t, &[0, 2, 0]), Location::Vertex(1));
        let big = [[3, 0, 0], [0, 3, 0], [0, 0, 3]];
        assert_eq!(locate(&big, &[1, 1, 1]), Location::Interior);
        let small = [[3, 0, 0], [2, 1, 0], [2, 0, 1]];
        assert_eq!(locate(&small, &[1, 1, 1]), Location::Outside);
    }

    #[test]
    fn disjointness() {
        let a = [[2, 0, 0], [1, 1, 0], [1, 0, 1]];
        let b = [[1, 1, 0], [0, 1, 1], [1, 0, 1]];
        assert!(interiors_disjoint(&a, &b));
        let whole = [[2, 0, 0], [0, 2, 0], [0, 0, 2]];
        assert!(!interiors_disjoint(&a, &whole));
    }
}
