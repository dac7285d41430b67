use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{chi_q_of, x_exact};
use crate::cutspace::{max_cut, CutFamily};
use crate::error::{Error, Result};
use crate::graph::{edge_orbits, Graph};
use crate::rational::{self, Rational};

/// Weighted cuts covering every edge at least once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate {
    pub family: CutFamily,
    pub value: Rational,
}

/// Edge weights with every cut carrying total weight at most 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    /// One weight per edge, in the order of [`Graph::edges`].
    pub y: Vec<Rational>,
    pub value: Rational,
    pub orbit_constant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Cover(CoverCertificate),
    Dual(DualCertificate),
}

/// Exact re-check of a cover. Structural problems are errors, a cover that
/// misses an edge or misstates its value is `Ok(false)`.
pub fn verify_cover(g: &Graph, c: &CoverCertificate) -> Result<bool> {
    c.family.validate(g)?;
    if c.family.total_weight() != c.value {
        return Ok(false);
    }
    Ok(c.family.coverage(g).iter().all(|w| *w >= Rational::one()))
}

/// Exact re-check of a packing: nonnegative weights whose heaviest cut,
/// found by weighted MAXCUT, weighs at most 1.
pub fn verify_dual(g: &Graph, d: &DualCertificate) -> Result<bool> {
    if d.y.len() != g.m() {
        return Err(Error::MalformedCertificate(format!("{} edge weights for {} edges", d.y.len(), g.m())));
    }
    if d.y.iter().any(|w| w.is_negative()) {
        return Err(Error::MalformedCertificate("negative edge weight".into()));
    }
    if d.y.iter().sum::<Rational>() != d.value {
        return Ok(false);
    }
    if g.m() == 0 {
        return Ok(true);
    }
    Ok(max_cut(g, Some(&d.y))?.value <= Rational::one())
}

pub fn verify_certificate(g: &Graph, cert: &Certificate) -> Result<bool> {
    match cert {
        Certificate::Cover(c) => verify_cover(g, c),
        Certificate::Dual(d) => verify_dual(g, d),
    }
}

/// The canonical optimal dual: an optimal packing averaged over edge orbits
/// of the automorphism group, re-verified exactly.
pub fn dual_symmetric(g: &Graph) -> Result<DualCertificate> {
    let orbits = edge_orbits(g);
    if !orbits.exact {
        return Err(Error::SizeLimit {
            what: "edge orbit computation",
            limit: crate::graph::MAX_ORBIT_VERTICES,
            actual: g.n(),
        });
    }
    let opt = x_exact(g)?;
    let mut y = vec![Rational::zero(); g.m()];
    for orbit in &orbits.orbits {
        let total: Rational = orbit.iter().map(|&e| &opt.dual.y[e]).sum();
        let mean = total / rational::from_usize(orbit.len());
        for &e in orbit {
            y[e] = mean.clone();
        }
    }
    let d = DualCertificate { value: y.iter().sum(), y, orbit_constant: true };
    if d.value != opt.value || !verify_dual(g, &d)? {
        return Err(Error::Verification("orbit-averaged dual is not optimal".into()));
    }
    Ok(d)
}

/// On-disk certificate:
/// `{"x": "p/q", "chi_q": "p/q", "primal": [{"mask", "weight"}], "dual": {"u-v": "p/q"}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    #[serde(with = "rational::serde_str")]
    pub x: Rational,
    #[serde(with = "rational::serde_str")]
    pub chi_q: Rational,
    pub primal: CutFamily,
    #[serde(with = "edge_map")]
    pub dual: Vec<((usize, usize), Rational)>,
}

impl CertificateFile {
    pub fn from_result(g: &Graph, r: &super::XResult) -> Self {
        CertificateFile {
            x: r.value.clone(),
            chi_q: r.chi_q(),
            primal: r.primal.family.clone(),
            dual: g.edges().iter().copied().zip(r.dual.y.iter().cloned()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }

    /// Dual weights in edge order of `g`; every edge must appear exactly once.
    pub fn dual_for(&self, g: &Graph) -> Result<DualCertificate> {
        let mut y: Vec<Option<Rational>> = vec![None; g.m()];
        for ((u, v), w) in &self.dual {
            let (a, b) = if u < v { (*u, *v) } else { (*v, *u) };
            let idx = g
                .edge_index(a, b)
                .ok_or_else(|| Error::CertificateMismatch(format!("{u}-{v} is not an edge")))?;
            if y[idx].replace(w.clone()).is_some() {
                return Err(Error::MalformedCertificate(format!("edge {u}-{v} listed twice")));
            }
        }
        let y: Vec<Rational> = y
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| {
                    let (u, v) = g.edges()[i];
                    Error::CertificateMismatch(format!("edge {u}-{v} has no dual weight"))
                })
            })
            .collect::<Result<_>>()?;
        Ok(DualCertificate { value: y.iter().sum(), y, orbit_constant: false })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub primal_valid: bool,
    pub dual_valid: bool,
    /// Primal total, dual total and the stated `x` coincide.
    pub values_agree: bool,
    /// The stated `chi_q` equals `2/(2 − x)`.
    pub chi_q_consistent: bool,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.primal_valid && self.dual_valid && self.values_agree && self.chi_q_consistent
    }
}

pub fn verify_certificate_file(g: &Graph, file: &CertificateFile) -> Result<CertificateCheck> {
    g.require_edges()?;
    if let Some(c) = file.primal.cuts.iter().find(|c| g.n() < 64 && c.mask >> g.n() != 0) {
        return Err(Error::CertificateMismatch(format!("cut {:x} uses a vertex beyond {}", c.mask, g.n())));
    }
    let cover = CoverCertificate { value: file.primal.total_weight(), family: file.primal.clone() };
    let dual = file.dual_for(g)?;
    let primal_valid = verify_cover(g, &cover)?;
    let dual_valid = verify_dual(g, &dual)?;
    let values_agree = cover.value == file.x && dual.value == file.x;
    let two = rational::int(2);
    let chi_q_consistent = file.x < two && chi_q_of(&file.x) == file.chi_q;
    Ok(CertificateCheck { primal_valid, dual_valid, values_agree, chi_q_consistent })
}

mod edge_map {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[((usize, usize), Rational)], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(v.len()))?;
        for ((a, b), w) in v {
            map.serialize_entry(&format!("{a}-{b}"), &rational::format(w))?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<((usize, usize), Rational)>, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        let mut out = Vec::with_capacity(raw.len());
        for (key, value) in raw {
            let (a, b) = key.split_once('-').ok_or_else(|| D::Error::custom(format!("bad edge key {key:?}")))?;
            let a: usize = a.trim().parse().map_err(|_| D::Error::custom(format!("bad edge key {key:?}")))?;
            let b: usize = b.trim().parse().map_err(|_| D::Error::custom(format!("bad edge key {key:?}")))?;
            let w = rational::parse(&value).map_err(D::Error::custom)?;
            out.push(((a, b), w));
        }
        out.sort_by_key(|x| x.0);
        Ok(out)
    }
}
