//! Deterministic generators for the benchmark domains.
//!
//! * Square: uniform `n x n` grid, row-major numbering from the bottom row.
//! * Curved L: polar product grid on `r in [1, 3]`, `theta in [0, pi/4]`
//!   minus the block `r in [1, 2]`, `theta in [pi/8, pi/4]`.
//! * Disk: a fan of triangles around the origin, then quadrilateral rings of
//!   uniform radial thickness. When ring cells grow too wide a transition
//!   ring splits every cell into three angularly.
//! * Cracked disk: the disk with every node on the positive x axis except
//!   the centre doubled; elements below the axis use the copies.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI, TAU};
use std::fmt;

use crate::error::{Error, Result};
use crate::mesh::{Element, ElementKind, NodalMesh};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementFamily {
    T3,
    Q4,
    /// Eight-edge triangles on six-node geometry.
    T8,
    /// Twelve-edge quadrilaterals on nine-node geometry.
    Q12,
    /// Three-node triangles with four-node quadrilaterals.
    Mixed1,
    /// Six-node triangles with nine-node quadrilaterals.
    Mixed2,
}

impl ElementFamily {
    pub const ALL: [ElementFamily; 6] = [Self::T3, Self::Q4, Self::T8, Self::Q12, Self::Mixed1, Self::Mixed2];

    pub fn tag(self) -> &'static str {
        match self {
            Self::T3 => "t3",
            Self::Q4 => "q4",
            Self::T8 => "t8",
            Self::Q12 => "q12",
            Self::Mixed1 => "mixed1",
            Self::Mixed2 => "mixed2",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.tag() == tag)
    }

    pub fn is_second_order(self) -> bool {
        matches!(self, Self::T8 | Self::Q12 | Self::Mixed2)
    }

    pub fn is_mixed(self) -> bool {
        matches!(self, Self::Mixed1 | Self::Mixed2)
    }
}

impl fmt::Display for ElementFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn single_kind_only(family: ElementFamily, domain: &str) -> Result<()> {
    if family.is_mixed() {
        return Err(Error::InvalidParameter(format!(
            "{domain} meshes use a single element family, not {family}"
        )));
    }
    Ok(())
}

/// How lattice cells are split into triangles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Diagonal {
    /// Every cell is cut from its lower-left to its upper-right corner.
    #[default]
    Uniform,
    /// Cut direction alternates in a checkerboard, which keeps the mesh
    /// symmetric under both axis reflections.
    Alternating,
}

/// Structured mesh on a rectangular parameter lattice of `(nx+1) x (ny+1)`
/// points (or `(2nx+1) x (2ny+1)` for second order), mapped by `place`.
/// Cells for which `keep(i, j)` is false are omitted and unused lattice
/// points are dropped, keeping row-major order among the rest.
fn lattice_mesh(
    nx: usize,
    ny: usize,
    family: ElementFamily,
    diagonal: Diagonal,
    keep: impl Fn(usize, usize) -> bool,
    place: impl Fn(f64, f64) -> [f64; 2],
) -> Result<NodalMesh> {
    let s = if family.is_second_order() { 2 } else { 1 };
    let (px, py) = (s * nx + 1, s * ny + 1);
    let id = |i: usize, j: usize| j * px + i;
    let mut cells: Vec<(ElementKind, Vec<usize>)> = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            if !keep(i, j) {
                continue;
            }
            let (i0, j0) = (s * i, s * j);
            let flip = diagonal == Diagonal::Alternating && (i + j) % 2 == 1;
            match family {
                ElementFamily::Q4 => cells.push((
                    ElementKind::Quad4,
                    vec![id(i0, j0), id(i0 + 1, j0), id(i0 + 1, j0 + 1), id(i0, j0 + 1)],
                )),
                ElementFamily::T3 => {
                    let (a, b, c, d) = (id(i0, j0), id(i0 + 1, j0), id(i0 + 1, j0 + 1), id(i0, j0 + 1));
                    if flip {
                        cells.push((ElementKind::Tri3, vec![a, b, d]));
                        cells.push((ElementKind::Tri3, vec![b, c, d]));
                    } else {
                        cells.push((ElementKind::Tri3, vec![a, b, c]));
                        cells.push((ElementKind::Tri3, vec![a, c, d]));
                    }
                }
                ElementFamily::Q12 => {
                    let nodes = (0..3).flat_map(|r| (0..3).map(move |c| (c, r))).map(|(c, r)| id(i0 + c, j0 + r)).collect();
                    cells.push((ElementKind::Quad9, nodes));
                }
                ElementFamily::T8 => {
                    let p = |c: usize, r: usize| id(i0 + c, j0 + r);
                    if flip {
                        cells.push((ElementKind::Tri6, vec![p(0, 0), p(2, 0), p(0, 2), p(1, 0), p(1, 1), p(0, 1)]));
                        cells.push((ElementKind::Tri6, vec![p(2, 0), p(2, 2), p(0, 2), p(2, 1), p(1, 2), p(1, 1)]));
                    } else {
                        cells.push((ElementKind::Tri6, vec![p(0, 0), p(2, 0), p(2, 2), p(1, 0), p(2, 1), p(1, 1)]));
                        cells.push((ElementKind::Tri6, vec![p(0, 0), p(2, 2), p(0, 2), p(1, 1), p(1, 2), p(0, 1)]));
                    }
                }
                ElementFamily::Mixed1 | ElementFamily::Mixed2 => unreachable!("checked by callers"),
            }
        }
    }
    let mut used = vec![false; px * py];
    for (_, nodes) in &cells {
        for &n in nodes {
            used[n] = true;
        }
    }
    let mut compact = vec![usize::MAX; px * py];
    let mut coords = Vec::new();
    for j in 0..py {
        for i in 0..px {
            if used[id(i, j)] {
                compact[id(i, j)] = coords.len();
                coords.push(place(i as f64 / s as f64, j as f64 / s as f64));
            }
        }
    }
    let elements = cells
        .into_iter()
        .map(|(k, nodes)| Element::new(k, nodes.into_iter().map(|n| compact[n]).collect()))
        .collect();
    NodalMesh::from_coords(&coords, elements)
}

/// Uniform `n x n` mesh of the square `[0, side]^2`.
pub fn gen_square(n: usize, side: f64, family: ElementFamily) -> Result<NodalMesh> {
    gen_square_with(n, side, family, Diagonal::Uniform)
}

pub fn gen_square_with(n: usize, side: f64, family: ElementFamily, diagonal: Diagonal) -> Result<NodalMesh> {
    single_kind_only(family, "square")?;
    if n == 0 || !(side > 0.0) {
        return Err(Error::InvalidParameter("square needs n >= 1 and a positive side".into()));
    }
    let h = side / n as f64;
    lattice_mesh(n, n, family, diagonal, |_, _| true, |u, v| [u * h, v * h])
}

/// Curved L with `nr` radial cells per unit radius and `na` angular cells
/// per `pi/8` sector. Cell count is `3 * (2 nr) * na` for quadrilaterals.
pub fn gen_curved_l(nr: usize, na: usize, family: ElementFamily) -> Result<NodalMesh> {
    single_kind_only(family, "curved-L")?;
    if nr == 0 || na == 0 {
        return Err(Error::InvalidParameter("curved-L needs positive divisions".into()));
    }
    let dr = 1.0 / nr as f64;
    let dt = FRAC_PI_8 / na as f64;
    lattice_mesh(
        2 * nr,
        2 * na,
        family,
        Diagonal::Uniform,
        |i, j| !(i < nr && j >= na),
        |u, v| {
            let (r, t) = (1.0 + u * dr, v * dt);
            [r * t.cos(), r * t.sin()]
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskParams {
    /// Triangles in the central fan (3..=12).
    pub core: usize,
    /// Quadrilateral rings outside the fan; radial step is `1 / (rings + 1)`.
    pub rings: usize,
    /// A transition ring is inserted when a cell's arc exceeds this many radial steps.
    pub max_aspect: f64,
}

impl DiskParams {
    pub fn new(core: usize, rings: usize) -> Self {
        Self {
            core,
            rings,
            max_aspect: 2.0,
        }
    }
}

/// Angular node counts per ring radius index and whether each quad ring is a transition.
fn disk_layout(p: &DiskParams) -> (Vec<usize>, Vec<bool>) {
    let h = 1.0 / (p.rings + 1) as f64;
    let mut counts = vec![p.core];
    let mut transition = Vec::with_capacity(p.rings);
    for k in 1..=p.rings {
        let n = *counts.last().unwrap();
        let r_in = k as f64 * h;
        let split = TAU * r_in / n as f64 > p.max_aspect * h;
        transition.push(split);
        counts.push(if split { 3 * n } else { n });
    }
    (counts, transition)
}

/// First-order skeleton of the disk: `Tri3` fan plus `Quad4` rings.
fn disk_skeleton(p: &DiskParams) -> Result<NodalMesh> {
    if !(3..=12).contains(&p.core) {
        return Err(Error::InvalidParameter(format!(
            "disk core fan needs 3..=12 triangles, got {}",
            p.core
        )));
    }
    if p.rings == 0 || !(p.max_aspect > 0.0) {
        return Err(Error::InvalidParameter("disk needs at least one quadrilateral ring".into()));
    }
    let h = 1.0 / (p.rings + 1) as f64;
    let (counts, transition) = disk_layout(p);
    let polar = |r: f64, t: f64| [r * t.cos(), r * t.sin()];
    let mut coords = vec![[0.0, 0.0]];
    let mut elements = Vec::new();

    let ring_nodes = |coords: &mut Vec<[f64; 2]>, r: f64, n: usize| -> Vec<usize> {
        (0..n)
            .map(|k| {
                coords.push(polar(r, TAU * k as f64 / n as f64));
                coords.len() - 1
            })
            .collect()
    };

    let mut inner = ring_nodes(&mut coords, h, counts[0]);
    for k in 0..counts[0] {
        let next = (k + 1) % counts[0];
        elements.push(Element::new(ElementKind::Tri3, vec![0, inner[k], inner[next]]));
    }
    for ring in 0..p.rings {
        let r_in = (ring + 1) as f64 * h;
        let n_in = counts[ring];
        if !transition[ring] {
            let outer = ring_nodes(&mut coords, r_in + h, n_in);
            for k in 0..n_in {
                let kn = (k + 1) % n_in;
                // Radial direction first keeps the orientation positive.
                elements.push(Element::new(ElementKind::Quad4, vec![inner[k], outer[k], outer[kn], inner[kn]]));
            }
            inner = outer;
            continue;
        }
        // Mid-radius nodes at one and two thirds of every inner cell, then the tripled outer ring.
        let mut mid = Vec::with_capacity(2 * n_in);
        for k in 0..n_in {
            for f in [1.0, 2.0] {
                coords.push(polar(r_in + 0.5 * h, TAU * (k as f64 + f / 3.0) / n_in as f64));
                mid.push(coords.len() - 1);
            }
        }
        let outer = ring_nodes(&mut coords, r_in + h, 3 * n_in);
        for k in 0..n_in {
            let (a0, a1) = (inner[k], inner[(k + 1) % n_in]);
            let (c1, c2) = (mid[2 * k], mid[2 * k + 1]);
            let b = |q: usize| outer[(3 * k + q) % (3 * n_in)];
            elements.push(Element::new(ElementKind::Quad4, vec![a0, c1, c2, a1]));
            elements.push(Element::new(ElementKind::Quad4, vec![a0, b(0), b(1), c1]));
            elements.push(Element::new(ElementKind::Quad4, vec![c1, b(1), b(2), c2]));
            elements.push(Element::new(ElementKind::Quad4, vec![c2, b(2), b(3), a1]));
        }
        inner = outer;
    }
    NodalMesh::from_coords(&coords, elements)
}

/// Raises a first-order mesh to six-node triangles and nine-node quads.
///
/// Edge midnodes between two nodes at the same positive radius are pushed
/// onto that circle; other midnodes sit on the chord. Quad centres use the
/// serendipity blend of midnodes and corners.
pub fn elevate(mesh: &NodalMesh) -> Result<NodalMesh> {
    let mut coords: Vec<[f64; 2]> = (0..mesh.num_nodes()).map(|i| mesh.coords(i)).collect();
    let mut mids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut midnode = |coords: &mut Vec<[f64; 2]>, a: usize, b: usize| -> usize {
        let key = (a.min(b), a.max(b));
        if let Some(&m) = mids.get(&key) {
            return m;
        }
        let (pa, pb) = (coords[a], coords[b]);
        let (ra, rb) = (pa[0].hypot(pa[1]), pb[0].hypot(pb[1]));
        let mut p = [0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])];
        if ra > 0.0 && (ra - rb).abs() <= 1e-12 * ra {
            let s = ra / p[0].hypot(p[1]);
            p = [p[0] * s, p[1] * s];
        }
        coords.push(p);
        mids.insert(key, coords.len() - 1);
        coords.len() - 1
    };
    let mut elements = Vec::with_capacity(mesh.num_elements());
    for el in mesh.elements() {
        let v = &el.nodes;
        match el.kind {
            ElementKind::Tri3 => {
                let m01 = midnode(&mut coords, v[0], v[1]);
                let m12 = midnode(&mut coords, v[1], v[2]);
                let m20 = midnode(&mut coords, v[2], v[0]);
                elements.push(Element::new(ElementKind::Tri6, vec![v[0], v[1], v[2], m01, m12, m20]));
            }
            ElementKind::Quad4 => {
                let m01 = midnode(&mut coords, v[0], v[1]);
                let m12 = midnode(&mut coords, v[1], v[2]);
                let m32 = midnode(&mut coords, v[3], v[2]);
                let m03 = midnode(&mut coords, v[0], v[3]);
                let mut c = [0.0; 2];
                for d in 0..2 {
                    let ms = coords[m01][d] + coords[m12][d] + coords[m32][d] + coords[m03][d];
                    let cs = coords[v[0]][d] + coords[v[1]][d] + coords[v[2]][d] + coords[v[3]][d];
                    c[d] = 0.5 * ms - 0.25 * cs;
                }
                coords.push(c);
                let centre = coords.len() - 1;
                elements.push(Element::new(
                    ElementKind::Quad9,
                    vec![v[0], m01, v[1], m03, centre, m12, v[3], m32, v[2]],
                ));
            }
            _ => return Err(Error::InvalidParameter("elevate expects a first-order mesh".into())),
        }
    }
    NodalMesh::from_coords(&coords, elements)
}

/// Disk of unit radius. `Mixed1` gives `Tri3`/`Quad4`, `Mixed2` the
/// second-order pair; other families are rejected.
pub fn gen_disk(params: &DiskParams, family: ElementFamily) -> Result<NodalMesh> {
    let skeleton = disk_skeleton(params)?;
    match family {
        ElementFamily::Mixed1 => Ok(skeleton),
        ElementFamily::Mixed2 => elevate(&skeleton),
        other => Err(Error::InvalidParameter(format!(
            "disk meshes are mixed; use mixed1 or mixed2, not {other}"
        ))),
    }
}

/// Doubles the nodes on the crack `y = 0, x > 0` (the centre excluded) and
/// rebinds elements lying below the crack to the copies.
pub fn crack_along_positive_x(mesh: &NodalMesh) -> Result<NodalMesh> {
    let scale = (0..mesh.num_nodes())
        .map(|i| {
            let [x, y] = mesh.coords(i);
            x.hypot(y)
        })
        .fold(0.0, f64::max);
    let tol = 1e-12 * scale.max(1.0);
    let mut coords: Vec<[f64; 2]> = (0..mesh.num_nodes()).map(|i| mesh.coords(i)).collect();
    let mut twin = vec![None; coords.len()];
    for i in 0..mesh.num_nodes() {
        let [x, y] = coords[i];
        if y.abs() <= tol && x > tol {
            twin[i] = Some(coords.len());
            coords.push([x, y]);
        }
    }
    let elements = mesh
        .elements()
        .iter()
        .map(|el| {
            let n = el.nodes.len() as f64;
            let cy: f64 = el.nodes.iter().map(|&v| coords[v][1]).sum::<f64>() / n;
            let nodes = if cy < 0.0 {
                el.nodes.iter().map(|&v| twin[v].unwrap_or(v)).collect()
            } else {
                el.nodes.clone()
            };
            Element::new(el.kind, nodes)
        })
        .collect();
    NodalMesh::from_coords(&coords, elements)
}

pub fn gen_cracked_disk(params: &DiskParams, family: ElementFamily) -> Result<NodalMesh> {
    crack_along_positive_x(&gen_disk(params, family)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Square,
    CurvedL,
    Disk,
    CrackedDisk,
}

impl Domain {
    pub const ALL: [Domain; 4] = [Self::Square, Self::CurvedL, Self::Disk, Self::CrackedDisk];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Square => "square",
            Self::CurvedL => "curved-l",
            Self::Disk => "disk",
            Self::CrackedDisk => "cracked-disk",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|d| d.tag() == tag)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Resolution of a generated mesh.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Resolution {
    /// Square subdivisions per side and triangle cut pattern.
    Square { n: usize, diagonal: Diagonal },
    /// Curved-L divisions: radial cells per unit radius, angular cells per pi/8.
    CurvedL { nr: usize, na: usize },
    Disk(DiskParams),
}

/// Named resolutions. `paper` presets match or exceed the published mesh
/// sizes; `ci` presets are the reduced versions used in quick runs.
///
/// | preset | family | resolution | elements |
/// |---|---|---|---|
/// | paper-square | q4, q12 | n = 16 | 256 |
/// | paper-square | t3 | n = 16, alternating cuts | 512 |
/// | paper-square | t8 | n = 8, alternating cuts | 128 |
/// | paper-curved-l | t3, q4 | nr = na = 10 | 600, 300 |
/// | paper-curved-l | t8, q12 | nr = na = 6 | 216, 108 |
/// | paper-disk | mixed1 | core 10, 22 rings | 10 + 1420 |
/// | paper-disk | mixed2 | core 11, 15 rings | 11 + 803 |
/// | ci-disk | mixed1 | core 10, 11 rings | 10 + 430 |
/// | ci-disk | mixed2 | core 10, 8 rings | 10 + 190 |
///
/// Cracked-disk presets reuse the disk resolutions.
pub fn preset(name: &str, family: ElementFamily) -> Result<(Domain, Resolution)> {
    let bad = || Error::InvalidParameter(format!("preset {name} does not support element family {family}"));
    let disk = |core, rings| Resolution::Disk(DiskParams::new(core, rings));
    let (domain, base) = match name {
        "paper-square" => (Domain::Square, "paper"),
        "paper-curved-l" => (Domain::CurvedL, "paper"),
        "paper-disk" => (Domain::Disk, "paper"),
        "paper-cracked-disk" => (Domain::CrackedDisk, "paper"),
        "ci-disk" => (Domain::Disk, "ci"),
        "ci-cracked-disk" => (Domain::CrackedDisk, "ci"),
        _ => return Err(Error::InvalidParameter(format!("unknown preset {name}"))),
    };
    let res = match (domain, base, family) {
        (Domain::Square, _, ElementFamily::T8) => Resolution::Square {
            n: 8,
            diagonal: Diagonal::Alternating,
        },
        (Domain::Square, _, ElementFamily::T3) => Resolution::Square {
            n: 16,
            diagonal: Diagonal::Alternating,
        },
        (Domain::Square, _, f) if !f.is_mixed() => Resolution::Square {
            n: 16,
            diagonal: Diagonal::Uniform,
        },
        (Domain::CurvedL, _, ElementFamily::T3 | ElementFamily::Q4) => Resolution::CurvedL { nr: 10, na: 10 },
        (Domain::CurvedL, _, ElementFamily::Q12 | ElementFamily::T8) => Resolution::CurvedL { nr: 6, na: 6 },
        (Domain::Disk | Domain::CrackedDisk, "paper", ElementFamily::Mixed1) => disk(10, 22),
        (Domain::Disk | Domain::CrackedDisk, "paper", ElementFamily::Mixed2) => disk(11, 15),
        (Domain::Disk | Domain::CrackedDisk, "ci", ElementFamily::Mixed1) => disk(10, 11),
        (Domain::Disk | Domain::CrackedDisk, "ci", ElementFamily::Mixed2) => disk(10, 8),
        _ => return Err(bad()),
    };
    Ok((domain, res))
}

/// Generates a mesh for a domain at an explicit resolution.
pub fn generate(domain: Domain, res: Resolution, family: ElementFamily) -> Result<NodalMesh> {
    match (domain, res) {
        (Domain::Square, Resolution::Square { n, diagonal }) => gen_square_with(n, PI, family, diagonal),
        (Domain::CurvedL, Resolution::CurvedL { nr, na }) => gen_curved_l(nr, na, family),
        (Domain::Disk, Resolution::Disk(p)) => gen_disk(&p, family),
        (Domain::CrackedDisk, Resolution::Disk(p)) => gen_cracked_disk(&p, family),
        _ => Err(Error::InvalidParameter(format!("resolution {res:?} does not fit domain {domain}"))),
    }
}

/// Angle of the inner corner of the curved L, for reference.
pub const CURVED_L_SECTOR: f64 = FRAC_PI_4;
