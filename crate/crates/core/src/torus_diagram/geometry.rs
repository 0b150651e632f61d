//! Exact planar predicates on rational points and segments.

use crate::rational::Frac;

pub type Point = (Frac, Frac);

fn sub(p: &Point, q: &Point) -> Point {
    (&p.0 - &q.0, &p.1 - &q.1)
}

fn cross(u: &Point, v: &Point) -> Frac {
    &(&u.0 * &v.1) - &(&u.1 * &v.0)
}

/// Sign of the signed area of the triangle p q r.
pub fn orient(p: &Point, q: &Point, r: &Point) -> i8 {
    let c = cross(&sub(q, p), &sub(r, p));
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

fn on_segment(p: &Point, q: &Point, r: &Point) -> bool {
    // r collinear with pq assumed; check bounding box.
    let (lox, hix) = if p.0 <= q.0 {
        (&p.0, &q.0)
    } else {
        (&q.0, &p.0)
    };
    let (loy, hiy) = if p.1 <= q.1 {
        (&p.1, &q.1)
    } else {
        (&q.1, &p.1)
    };
    lox <= &r.0 && &r.0 <= hix && loy <= &r.1 && &r.1 <= hiy
}

/// Closed-segment intersection test, exact.
pub fn segments_intersect(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> bool {
    let o1 = orient(p1, p2, q1);
    let o2 = orient(p1, p2, q2);
    let o3 = orient(q1, q2, p1);
    let o4 = orient(q1, q2, p2);
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && on_segment(p1, p2, q1))
        || (o2 == 0 && on_segment(p1, p2, q2))
        || (o3 == 0 && on_segment(q1, q2, p1))
        || (o4 == 0 && on_segment(q1, q2, p2))
}

/// L-infinity distance between two points.
pub fn linf_point(p: &Point, q: &Point) -> Frac {
    let dx = (&p.0 - &q.0).abs();
    let dy = (&p.1 - &q.1).abs();
    if dx >= dy {
        dx
    } else {
        dy
    }
}

/// Exact L-infinity distance from a point to a segment. The distance along
/// the segment is a piecewise-affine max of two absolute values; its minimum
/// is attained at a parameter where the two deviations agree up to sign, at
/// a zero of one of them, or at an endpoint.
pub fn linf_point_segment(p: &Point, a: &Point, b: &Point) -> Frac {
    let d = sub(b, a);
    let r = sub(p, a);
    // deviations: f(t) = |r.x - t d.x|, g(t) = |r.y - t d.y| for t in [0,1]
    let mut candidates = vec![Frac::zero(), Frac::one()];
    let mut add_root = |num: Frac, den: Frac| {
        if !den.is_zero() {
            let t = &num / &den;
            if !t.is_negative() && t <= Frac::one() {
                candidates.push(t);
            }
        }
    };
    // zeros of each deviation
    add_root(r.0.clone(), d.0.clone());
    add_root(r.1.clone(), d.1.clone());
    // |f| = |g| breakpoints: r.x - t d.x = +-(r.y - t d.y)
    add_root(&r.0 - &r.1, &d.0 - &d.1);
    add_root(&r.0 + &r.1, &d.0 + &d.1);

    let mut best: Option<Frac> = None;
    for t in candidates {
        let fx = (&r.0 - &(&t * &d.0)).abs();
        let fy = (&r.1 - &(&t * &d.1)).abs();
        let v = if fx >= fy { fx } else { fy };
        best = Some(match best {
            None => v,
            Some(b) if v < b => v,
            Some(b) => b,
        });
    }
    best.expect("nonempty candidate set")
}

/// Integer shift range so that `[lo2 + t, hi2 + t]` can overlap `[lo1, hi1]`.
pub fn shift_range(lo1: &Frac, hi1: &Frac, lo2: &Frac, hi2: &Frac) -> Vec<i64> {
    use num_traits::ToPrimitive;
    let lo = (lo1 - hi2).0.ceil().to_integer();
    let hi = (hi1 - lo2).0.floor().to_integer();
    let lo = lo.to_i64().unwrap_or(0);
    let hi = hi.to_i64().unwrap_or(0);
    (lo..=hi).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(a: i64, b: i64, den: i64) -> Point {
        (Frac::new(a, den), Frac::new(b, den))
    }

    #[test]
    fn crossing_segments() {
        assert!(segments_intersect(
            &pt(0, 0, 1),
            &pt(2, 2, 1),
            &pt(0, 2, 1),
            &pt(2, 0, 1)
        ));
        assert!(!segments_intersect(
            &pt(0, 0, 1),
            &pt(1, 0, 1),
            &pt(0, 1, 1),
            &pt(1, 1, 1)
        ));
        // touching at an endpoint counts
        assert!(segments_intersect(
            &pt(0, 0, 1),
            &pt(1, 1, 1),
            &pt(1, 1, 1),
            &pt(2, 0, 1)
        ));
        // collinear overlap
        assert!(segments_intersect(
            &pt(0, 0, 1),
            &pt(2, 0, 1),
            &pt(1, 0, 1),
            &pt(3, 0, 1)
        ));
    }

    #[test]
    fn point_segment_distance() {
        // distance from origin to vertical segment x=1
        let d = linf_point_segment(&pt(0, 0, 1), &pt(1, -1, 1), &pt(1, 1, 1));
        assert_eq!(d, Frac::int(1));
        // point on the segment
        let d = linf_point_segment(&pt(1, 0, 1), &pt(0, 0, 1), &pt(2, 0, 1));
        assert_eq!(d, Frac::zero());
        // diagonal segment
        let d = linf_point_segment(&pt(0, 0, 1), &pt(1, 2, 1), &pt(2, 1, 1));
        assert_eq!(d, Frac::new(3, 2));
    }
}
