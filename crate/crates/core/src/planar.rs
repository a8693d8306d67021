//! Rotation-system utilities shared by link diagrams and tangles.
//!
//! A map has 4-valent vertices; dart `4*v + k` is slot `k` of vertex `v`,
//! slots listed counterclockwise. `partner[d]` is the dart at the other end
//! of the edge leaving `d`. Corner `4*v + k` is the angle between slots `k`
//! and `k+1`.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    pub partner: Vec<usize>,
}

#[inline]
pub fn dart(v: usize, k: usize) -> usize {
    4 * v + (k % 4)
}

#[inline]
pub fn vertex(d: usize) -> usize {
    d / 4
}

#[inline]
pub fn slot(d: usize) -> usize {
    d % 4
}

/// Face cycles of the map.
#[derive(Debug, Clone)]
pub struct Faces {
    /// Face id of each corner.
    pub of_corner: Vec<usize>,
    pub count: usize,
}

impl PlanarMap {
    pub fn vertex_count(&self) -> usize {
        self.partner.len() / 4
    }

    /// The corner following `c` along its face: leave through the next slot
    /// counterclockwise and arrive at the partner's corner.
    #[inline]
    pub fn next_corner(&self, c: usize) -> usize {
        self.partner[dart(vertex(c), slot(c) + 1)]
    }

    pub fn faces(&self) -> Faces {
        let mut of_corner = vec![usize::MAX; self.partner.len()];
        let mut count = 0;
        for start in 0..self.partner.len() {
            if of_corner[start] != usize::MAX {
                continue;
            }
            let mut c = start;
            while of_corner[c] == usize::MAX {
                of_corner[c] = count;
                c = self.next_corner(c);
            }
            count += 1;
        }
        Faces { of_corner, count }
    }

    /// Connected components of the underlying graph, as a vertex labelling.
    pub fn vertex_components(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = count;
            while let Some(v) = stack.pop() {
                for k in 0..4 {
                    let w = vertex(self.partner[dart(v, k)]);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Each connected component must be a sphere: `F = V + 2` per component
    /// (since `E = 2V`).
    pub fn is_spherical(&self, faces: &Faces) -> bool {
        let (_, comps) = self.vertex_components();
        faces.count == self.vertex_count() + 2 * comps
    }

    /// Two-colours the faces so that faces on opposite sides of an edge
    /// differ. Returns `None` if impossible.
    pub fn face_colors(&self, faces: &Faces) -> Option<Vec<u8>> {
        let mut adj = vec![Vec::new(); faces.count];
        for d in 0..self.partner.len() {
            let left = faces.of_corner[dart(vertex(d), slot(d) + 3)];
            let right = faces.of_corner[d];
            adj[left].push(right);
            adj[right].push(left);
        }
        let mut color = vec![u8::MAX; faces.count];
        for s in 0..faces.count {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(f) = stack.pop() {
                for &g in &adj[f] {
                    if color[g] == u8::MAX {
                        color[g] = 1 - color[f];
                        stack.push(g);
                    } else if color[g] == color[f] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Canonical code of the component containing `root`, traversed
    /// breadth-first with `root`'s slot as the reference slot of its vertex.
    /// Vertices of the same component get identical codes iff the rooted maps
    /// are isomorphic. Each vertex contributes the parity of its reference
    /// slot so that under/over information survives.
    pub fn rooted_code(&self, root: usize) -> Vec<u32> {
        self.rooted_code_with(root, true)
    }

    /// As [`rooted_code`](Self::rooted_code) but blind to slot parity, so
    /// only the underlying shadow is compared.
    pub fn rooted_shape(&self, root: usize) -> Vec<u32> {
        self.rooted_code_with(root, false)
    }

    fn rooted_code_with(&self, root: usize, parity: bool) -> Vec<u32> {
        let n = self.vertex_count();
        let mut label = vec![u32::MAX; n];
        let mut entry = vec![0usize; n];
        let mut order = Vec::new();
        label[vertex(root)] = 0;
        entry[vertex(root)] = slot(root);
        order.push(vertex(root));
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for r in 0..4 {
                let p = self.partner[dart(v, entry[v] + r)];
                let w = vertex(p);
                if label[w] == u32::MAX {
                    label[w] = order.len() as u32;
                    entry[w] = slot(p);
                    order.push(w);
                }
            }
        }
        let mut code = Vec::with_capacity(order.len() * 9);
        for &v in &order {
            if parity {
                code.push((entry[v] % 2) as u32);
            }
            for r in 0..4 {
                let p = self.partner[dart(v, entry[v] + r)];
                let w = vertex(p);
                code.push(label[w]);
                code.push(((slot(p) + 4 - entry[w]) % 4) as u32);
            }
        }
        code
    }
}
