//! Finite abstract simplicial complexes over named vertices.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::homology::{ChainComplex, HomologyProfile, SparseMatrix};
use crate::lp::{LpCategory, LpCategoryBuilder};

pub type SimplexId = usize;

/// Simplices are sorted vertex-index tuples, numbered by dimension then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, SimplexId>,
    by_dim: Vec<Vec<SimplexId>>,
}

impl SimplicialComplex {
    /// Downward closure of the given simplices. Vertex names are sorted lexicographically.
    pub fn from_maximal<S: AsRef<str>>(simplices: &[Vec<S>]) -> Result<Self> {
        let mut names = BTreeSet::new();
        for s in simplices {
            let distinct: BTreeSet<&str> = s.iter().map(|v| v.as_ref()).collect();
            if distinct.len() != s.len() {
                return Err(Error::InvalidComplex(format!(
                    "simplex with repeated vertex: {}",
                    s.iter().map(|v| v.as_ref()).join(" ")
                )));
            }
            if s.is_empty() {
                return Err(Error::InvalidComplex("empty simplex".into()));
            }
            names.extend(distinct.into_iter().map(str::to_string));
        }
        let vertices: Vec<String> = names.into_iter().collect();
        let vertex_index: HashMap<String, usize> =
            vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut all = BTreeSet::new();
        for s in simplices {
            let mut idx: Vec<usize> = s.iter().map(|v| vertex_index[v.as_ref()]).collect();
            idx.sort_unstable();
            for k in 1..=idx.len() {
                for face in idx.iter().copied().combinations(k) {
                    all.insert(face);
                }
            }
        }
        Ok(Self::assemble(vertices, vertex_index, all))
    }

    /// Builds from a list that must already be closed under faces.
    pub fn from_closed<S: AsRef<str>>(simplices: &[Vec<S>]) -> Result<Self> {
        let x = Self::from_maximal(simplices)?;
        let given: BTreeSet<Vec<usize>> = simplices
            .iter()
            .map(|s| {
                let mut v: Vec<usize> = s.iter().map(|n| x.vertex_index[n.as_ref()]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        if given.len() != x.len() {
            let missing = x.simplices.iter().find(|s| !given.contains(*s)).unwrap();
            return Err(Error::InvalidComplex(format!(
                "not closed under faces: missing {}",
                x.format_vertices(missing)
            )));
        }
        Ok(x)
    }

    fn assemble(
        vertices: Vec<String>,
        vertex_index: HashMap<String, usize>,
        all: BTreeSet<Vec<usize>>,
    ) -> Self {
        let mut simplices: Vec<Vec<usize>> = all.into_iter().collect();
        simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut by_dim: Vec<Vec<SimplexId>> = Vec::new();
        for (i, s) in simplices.iter().enumerate() {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(i);
        }
        SimplicialComplex {
            vertices,
            vertex_index,
            simplices,
            index,
            by_dim,
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 1
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn simplex(&self, s: SimplexId) -> &[usize] {
        &self.simplices[s]
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex_dim(&self, s: SimplexId) -> usize {
        self.simplices[s].len() - 1
    }

    pub fn of_dim(&self, d: usize) -> &[SimplexId] {
        self.by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn find(&self, verts: &[usize]) -> Option<SimplexId> {
        let mut v = verts.to_vec();
        v.sort_unstable();
        self.index.get(&v).copied()
    }

    pub fn find_named<S: AsRef<str>>(&self, names: &[S]) -> Option<SimplexId> {
        let verts: Option<Vec<usize>> = names.iter().map(|n| self.vertex_index(n.as_ref())).collect();
        self.find(&verts?)
    }

    /// Vertex simplex for the given vertex index.
    pub fn vertex_simplex(&self, v: usize) -> SimplexId {
        self.index[&vec![v]]
    }

    /// Codimension-one faces, in the order obtained by dropping vertex 0, 1, ...
    pub fn boundary_faces(&self, s: SimplexId) -> Vec<SimplexId> {
        let verts = &self.simplices[s];
        if verts.len() == 1 {
            return Vec::new();
        }
        (0..verts.len())
            .map(|i| {
                let mut f = verts.clone();
                f.remove(i);
                self.index[&f]
            })
            .collect()
    }

    /// All proper nonempty faces.
    pub fn proper_faces(&self, s: SimplexId) -> Vec<SimplexId> {
        let verts = &self.simplices[s];
        let mut out = Vec::new();
        for k in 1..verts.len() {
            for f in verts.iter().copied().combinations(k) {
                out.push(self.index[&f]);
            }
        }
        out.sort_unstable();
        out
    }

    /// Simplices having `s` as a codimension-one face.
    pub fn cofaces(&self, s: SimplexId) -> Vec<SimplexId> {
        let d = self.simplex_dim(s);
        self.of_dim(d + 1)
            .iter()
            .copied()
            .filter(|&t| self.is_face(s, t))
            .collect()
    }

    /// Whether `a` is a (not necessarily proper) face of `b`.
    pub fn is_face(&self, a: SimplexId, b: SimplexId) -> bool {
        let (va, vb) = (&self.simplices[a], &self.simplices[b]);
        va.len() <= vb.len() && va.iter().all(|v| vb.binary_search(v).is_ok())
    }

    pub fn is_proper_face(&self, a: SimplexId, b: SimplexId) -> bool {
        a != b && self.is_face(a, b)
    }

    pub fn maximal_simplices(&self) -> Vec<SimplexId> {
        (0..self.len())
            .filter(|&s| self.cofaces(s).is_empty())
            .collect()
    }

    pub fn format_vertices(&self, verts: &[usize]) -> String {
        verts.iter().map(|&v| self.vertices[v].as_str()).join(" ")
    }

    /// Whitespace-free label such as `{a0,b0}`.
    pub fn label(&self, s: SimplexId) -> String {
        format!(
            "{{{}}}",
            self.simplices[s].iter().map(|&v| self.vertices[v].as_str()).join(",")
        )
    }

    pub fn vertex_names(&self, s: SimplexId) -> Vec<&str> {
        self.simplices[s].iter().map(|&v| self.vertices[v].as_str()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Subcomplex spanned by the given simplices and all their faces.
    pub fn subcomplex(&self, keep: &[SimplexId]) -> Result<SimplicialComplex> {
        let tuples: Vec<Vec<&str>> = keep.iter().map(|&s| self.vertex_names(s)).collect();
        SimplicialComplex::from_maximal(&tuples)
    }

    /// Chain complex with lexicographic orientation.
    pub fn chain_complex(&self) -> ChainComplex {
        let dims: Vec<usize> = self.f_vector();
        let pos: Vec<usize> = {
            let mut pos = vec![0; self.len()];
            for ids in &self.by_dim {
                for (i, &s) in ids.iter().enumerate() {
                    pos[s] = i;
                }
            }
            pos
        };
        let mut boundaries = Vec::new();
        for d in 1..dims.len() {
            let mut m = SparseMatrix::new(dims[d - 1], dims[d]);
            for (j, &s) in self.by_dim[d].iter().enumerate() {
                for (i, f) in self.boundary_faces(s).into_iter().enumerate() {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    m.push(pos[f], j, sign);
                }
            }
            boundaries.push(m);
        }
        ChainComplex::new(dims, boundaries)
    }

    /// Barycentric subdivision. Vertex `i` of the result is named `[v0;v1;...]` after simplex `i`.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        let names: Vec<String> = (0..self.len())
            .map(|s| format!("[{}]", self.vertex_names(s).join(";")))
            .collect();
        let chains = self.strict_chains();
        let tuples: Vec<Vec<&str>> = chains
            .iter()
            .map(|c| c.iter().map(|&s| names[s].as_str()).collect())
            .collect();
        SimplicialComplex::from_maximal(&tuples).expect("chains have distinct members")
    }

    /// Name that [`Self::barycentric_subdivision`] gives to the barycentre of `s`.
    pub fn barycentre_name(&self, s: SimplexId) -> String {
        format!("[{}]", self.vertex_names(s).join(";"))
    }

    /// Maximal strictly increasing chains of simplices under inclusion.
    fn strict_chains(&self) -> Vec<Vec<SimplexId>> {
        let mut out = Vec::new();
        for top in self.maximal_simplices() {
            let mut stack = vec![vec![top]];
            while let Some(chain) = stack.pop() {
                let last = *chain.last().unwrap();
                let faces = self.boundary_faces(last);
                if faces.is_empty() {
                    out.push(chain);
                    continue;
                }
                for f in faces {
                    let mut c = chain.clone();
                    c.push(f);
                    stack.push(c);
                }
            }
        }
        out
    }
}

pub fn complex_from_maximal<S: AsRef<str>>(simplices: &[Vec<S>]) -> Result<SimplicialComplex> {
    SimplicialComplex::from_maximal(simplices)
}

/// Face poset with a morphism `x -> x'` whenever `x'` is a proper face of `x`.
pub fn face_poset(x: &SimplicialComplex) -> LpCategory {
    let mut b = LpCategoryBuilder::new();
    for s in 0..x.len() {
        b.add_object(x.label(s));
    }
    let mut mor: HashMap<(SimplexId, SimplexId), usize> = HashMap::new();
    for s in 0..x.len() {
        for f in x.proper_faces(s) {
            let m = b.add_morphism(s, f, format!("{}>{}", x.label(s), x.label(f)));
            mor.insert((s, f), m);
        }
    }
    for (&(s, f), &m1) in &mor {
        for g in x.proper_faces(f) {
            b.set_composite(m1, mor[&(f, g)], mor[&(s, g)]);
        }
    }
    b.build().expect("face poset is well typed")
}

pub fn simplicial_homology_oracle(x: &SimplicialComplex) -> Result<HomologyProfile> {
    crate::homology::homology(&x.chain_complex())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::validate_lp;

    fn tri() -> SimplicialComplex {
        SimplicialComplex::from_maximal(&[vec!["a", "b", "c"]]).unwrap()
    }

    #[test]
    fn closure_counts() {
        assert_eq!(tri().len(), 7);
        let tet = ["a", "b", "c", "d"];
        let boundary: Vec<Vec<&str>> = tet.iter().copied().combinations(3).collect();
        let x = SimplicialComplex::from_maximal(&boundary).unwrap();
        assert_eq!(x.len(), 14);
        assert_eq!(x.f_vector(), vec![4, 6, 4]);
        assert_eq!(x.euler_characteristic(), 2);
    }

    #[test]
    fn empty_input_gives_empty_complex() {
        let x = SimplicialComplex::from_maximal::<&str>(&[]).unwrap();
        assert!(x.is_empty());
        assert_eq!(x.dim(), -1);
    }

    #[test]
    fn repeated_vertex_rejected() {
        assert!(SimplicialComplex::from_maximal(&[vec!["a", "a"]]).is_err());
    }

    #[test]
    fn from_closed_detects_missing_face() {
        assert!(SimplicialComplex::from_closed(&[vec!["a", "b"], vec!["a"]]).is_err());
        assert!(SimplicialComplex::from_closed(&[vec!["a", "b"], vec!["a"], vec!["b"]]).is_ok());
    }

    #[test]
    fn lexicographic_vertex_order() {
        let x = SimplicialComplex::from_maximal(&[vec!["b10", "b2", "a"]]).unwrap();
        assert_eq!(x.vertices(), &["a", "b10", "b2"]);
        assert_eq!(x.label(x.len() - 1), "{a,b10,b2}");
    }

    #[test]
    fn face_poset_counts() {
        let p = SimplicialComplex::from_maximal(&[vec!["a"]]).unwrap();
        let c = face_poset(&p);
        assert_eq!((c.n_objects(), c.n_morphisms()), (1, 1));
        let e = SimplicialComplex::from_maximal(&[vec!["a", "b"]]).unwrap();
        let c = face_poset(&e);
        assert_eq!((c.n_objects(), c.non_identity_count()), (3, 2));
        let c = face_poset(&tri());
        assert_eq!((c.n_objects(), c.non_identity_count()), (7, 12));
        // brute force: strict face pairs
        let x = tri();
        let pairs = (0..x.len())
            .cartesian_product(0..x.len())
            .filter(|&(a, b)| x.is_proper_face(b, a))
            .count();
        assert_eq!(pairs, 12);
        assert!(validate_lp(&c).is_ok());
    }

    #[test]
    fn each_simplex_has_all_codim_one_faces() {
        let x = tri();
        for s in 0..x.len() {
            let d = x.simplex_dim(s);
            if d > 0 {
                assert_eq!(x.boundary_faces(s).len(), d + 1);
            }
        }
    }

    #[test]
    fn subdivision_of_triangle() {
        let sd = tri().barycentric_subdivision();
        assert_eq!(sd.f_vector(), vec![7, 12, 6]);
        assert_eq!(sd.euler_characteristic(), 1);
    }
}
