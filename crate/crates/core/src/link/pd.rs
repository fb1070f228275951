//! Planar diagram codes: `PD[X[1,5,2,4], X[3,1,4,6], ...]`.
//!
//! Each `X[a,b,c,d]` lists edge labels counterclockwise starting from the incoming
//! under strand. Free loops are written `Loop[]`.

use std::collections::HashMap;

use super::diagram::{Edge, LinkDiagram, Port};
use crate::error::{Error, Result};

fn parse_entries(s: &str) -> Result<(Vec<[i64; 4]>, usize)> {
    let mut t = s.trim();
    if let Some(inner) = t.strip_prefix("PD[") {
        t = inner.strip_suffix(']').ok_or_else(|| Error::Parse("unbalanced PD[...]".into()))?;
    }
    let mut xs = vec![];
    let mut loops = 0;
    let mut rest = t.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        if let Some(r) = rest.strip_prefix("Loop[]") {
            loops += 1;
            rest = r;
            continue;
        }
        let r = rest.strip_prefix("X[").ok_or_else(|| Error::Parse(format!("expected X[...] at {rest:?}")))?;
        let end = r.find(']').ok_or_else(|| Error::Parse("unterminated X[".into()))?;
        let labels = r[..end]
            .split(',')
            .map(|v| v.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad edge label {v:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let labels: [i64; 4] = labels.try_into().map_err(|_| Error::Parse("a crossing has four edges".into()))?;
        xs.push(labels);
        rest = &r[end + 1..];
    }
    Ok((xs, loops))
}

/// Parses a PD code. The under strand of `X[a,b,c,d]` runs `a -> c`; the over strand
/// direction is propagated along components, falling back to the usual rule on
/// consecutive labels (positive iff `b - d == 1` or `d - b > 1`) for components
/// that never pass under.
pub fn parse_pd(s: &str) -> Result<LinkDiagram> {
    let (xs, loops) = parse_entries(s)?;
    let mut ids: HashMap<i64, u32> = HashMap::new();
    let mut slots: Vec<Vec<Port>> = vec![];
    let mut crossings = vec![];
    for (x, lab) in xs.iter().enumerate() {
        let mut c = [0u32; 4];
        for k in 0..4 {
            let n = ids.len() as u32;
            let e = *ids.entry(lab[k]).or_insert(n);
            if e as usize == slots.len() {
                slots.push(vec![]);
            }
            slots[e as usize].push((x as u32, k as u8));
            c[k] = e;
        }
        crossings.push(c);
    }
    if let Some(e) = slots.iter().position(|v| v.len() != 2) {
        let label = ids.iter().find(|(_, &v)| v as usize == e).map(|(&k, _)| k).unwrap();
        return Err(Error::InvalidDiagram(format!("edge {label} does not appear exactly twice")));
    }
    // head[e] is the incoming end of edge e once known
    let mut head: Vec<Option<Port>> = vec![None; slots.len()];
    let set = |head: &mut Vec<Option<Port>>, e: u32, p: Port| -> Result<bool> {
        match head[e as usize] {
            Some(q) if q == p => Ok(false),
            Some(_) => Err(Error::InvalidDiagram("inconsistent orientation".into())),
            None => {
                head[e as usize] = Some(p);
                Ok(true)
            }
        }
    };
    let other = |e: u32, p: Port| -> Port {
        let v = &slots[e as usize];
        if v[0] == p {
            v[1]
        } else {
            v[0]
        }
    };
    for (x, c) in crossings.iter().enumerate() {
        let x = x as u32;
        set(&mut head, c[0], (x, 0))?;
        set(&mut head, c[2], other(c[2], (x, 2)))?;
    }
    let mut decided = vec![false; crossings.len()];
    loop {
        let mut progress = true;
        while progress {
            progress = false;
            for (x, c) in crossings.iter().enumerate() {
                if decided[x] {
                    continue;
                }
                let xu = x as u32;
                let known = [1u8, 3].into_iter().find_map(|k| {
                    let e = c[k as usize];
                    head[e as usize].map(|h| (k, h == (xu, k)))
                });
                if let Some((k, into)) = known {
                    let into_slot = if into { k } else { (k + 2) % 4 };
                    let out_slot = (into_slot + 2) % 4;
                    set(&mut head, c[into_slot as usize], (xu, into_slot))?;
                    let oe = c[out_slot as usize];
                    set(&mut head, oe, other(oe, (xu, out_slot)))?;
                    decided[x] = true;
                    progress = true;
                }
            }
        }
        let Some(x) = decided.iter().position(|d| !d) else { break };
        let (b, d) = (xs[x][1], xs[x][3]);
        let positive = b - d == 1 || d - b > 1;
        let into_slot = if positive { 3 } else { 1 };
        let e = crossings[x][into_slot as usize];
        set(&mut head, e, (x as u32, into_slot))?;
    }
    let edges = (0..slots.len() as u32)
        .map(|e| {
            let h = head[e as usize].unwrap();
            Edge { tail: other(e, h), head: h }
        })
        .collect();
    LinkDiagram::from_parts(crossings, edges, vec![1; loops], vec![])
}

/// PD code with edges numbered consecutively along components, starting at 1.
pub fn to_pd(d: &LinkDiagram) -> String {
    let mut label = vec![0u32; d.num_edges()];
    let mut next = 1;
    for c in 0..d.num_components() {
        for &e in d.component_edges(c) {
            label[e as usize] = next;
            next += 1;
        }
    }
    let mut parts: Vec<String> = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(x, c)| {
            let r = if d.enters(x, 0) { 0 } else { 2 };
            let l: Vec<String> = (0..4).map(|k| label[c[(k + r) % 4] as usize].to_string()).collect();
            format!("X[{}]", l.join(","))
        })
        .collect();
    parts.extend((0..d.num_loops()).map(|_| "Loop[]".to_string()));
    format!("PD[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]";

    #[test]
    fn trefoil_signs() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.num_components(), 1);
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn five_two() {
        let d = parse_pd("X[1,4,2,5], X[3,8,4,9], X[5,10,6,1], X[9,6,10,7], X[7,2,8,3]").unwrap();
        assert_eq!(d.num_components(), 1);
        assert_eq!(d.writhe(), -5);
        assert_eq!(d.num_faces(), 7);
        // crossings listed in an order that cannot close up in the plane
        let bad = parse_pd("X[1,5,2,4], X[3,9,4,8], X[5,3,6,2], X[7,1,8,10], X[9,7,10,6]");
        assert!(matches!(bad, Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn round_trip() {
        let d = parse_pd(TREFOIL).unwrap();
        let again = parse_pd(&to_pd(&d)).unwrap();
        assert_eq!(again.writhe(), d.writhe());
        assert_eq!(to_pd(&again), to_pd(&d));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_pd("X[1,2,3]").is_err());
        assert!(parse_pd("X[1,1,2,3]").is_err());
        assert!(parse_pd("Y[1,2,3,4]").is_err());
    }
}
