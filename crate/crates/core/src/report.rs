//! End-to-end analysis of one (group, field, cocycle) configuration.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cocycle::{Cocycle, CocycleSpec, DihedralSign};
use crate::derivation::{
    der_space_generators, der_space_oracle, dihedral_constraints, hh1_from_parts, inn_space, DerivationError,
    GeneratorMapJson, DEFAULT_ORACLE_BOUND,
};
use crate::ff::{FieldCtx, FieldSpec};
use crate::group::{Group, GroupKind, GroupSpec};
use crate::linalg::RowSpace;
use crate::ring::TwistedRing;
use crate::Error;

/// A validated configuration and its ring.
#[derive(Debug, Clone)]
pub struct Setup {
    pub group_spec: GroupSpec,
    pub cocycle_spec: CocycleSpec,
    pub ring: TwistedRing,
    /// A sign cocycle degenerated to the trivial one in characteristic 2.
    pub collapsed: bool,
}

impl Setup {
    pub fn new(group: &GroupSpec, field: &FieldSpec, cocycle: &CocycleSpec) -> Result<Self, Error> {
        let g = Arc::new(Group::from_spec(group)?);
        let f = Arc::new(FieldCtx::from_spec(field)?);
        Self::from_parts(group.clone(), g, f, cocycle)
    }

    pub fn from_parts(
        group_spec: GroupSpec,
        group: Arc<Group>,
        field: Arc<FieldCtx>,
        cocycle: &CocycleSpec,
    ) -> Result<Self, Error> {
        let sc = Cocycle::from_spec(cocycle, &group, &field)?;
        Ok(Setup {
            group_spec,
            cocycle_spec: cocycle.clone(),
            ring: TwistedRing::new(&sc.cocycle),
            collapsed: sc.collapsed,
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    pub bases: bool,
    /// Also run the brute-force oracle and, for dihedral groups, the closed form.
    pub oracle: bool,
    pub oracle_bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub group: GroupSpec,
    pub field: FieldSpec,
    pub cocycle: CocycleSpec,
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub der: usize,
    pub inn: usize,
    pub center: usize,
    pub hh1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regime {
    pub p: u64,
    pub p_divides_order: bool,
    /// Only for dihedral groups D_{2n}.
    pub n: Option<usize>,
    pub p_divides_n: Option<bool>,
    pub sign_collapsed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub method: String,
    pub der: Option<usize>,
    pub agrees: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bases {
    pub der: Vec<GeneratorMapJson>,
    pub center: Vec<BTreeMap<String, String>>,
    pub hh1: Vec<GeneratorMapJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub dims: Dims,
    pub regime: Regime,
    pub cross_checks: Vec<CrossCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<Bases>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn build(setup: &Setup, opts: ReportOptions) -> Result<Report, Error> {
        let ring = &setup.ring;
        let group = ring.group();
        let field = ring.field();
        let p = field.characteristic();
        let order = group.order();

        let sys = der_space_generators(ring);
        let inn = inn_space(ring)?;
        let h = hh1_from_parts(ring, &sys, &inn)?;
        let dims = Dims {
            der: sys.dim,
            inn: inn.dim,
            center: inn.center.len(),
            hh1: h.dim,
        };

        let n = match group.kind() {
            GroupKind::Dihedral { n } => Some(*n),
            _ => None,
        };
        let regime = Regime {
            p,
            p_divides_order: order as u64 % p == 0,
            n,
            p_divides_n: n.map(|n| n as u64 % p == 0),
            sign_collapsed: setup.collapsed,
        };

        let mut cross_checks = vec![CrossCheck {
            method: "generators".into(),
            der: Some(sys.dim),
            agrees: true,
            note: None,
        }];
        if opts.oracle {
            let bound = opts.oracle_bound.unwrap_or(DEFAULT_ORACLE_BOUND);
            cross_checks.push(match der_space_oracle(ring, bound) {
                Ok(o) => CrossCheck {
                    method: "oracle".into(),
                    der: Some(o.dim),
                    agrees: o.dim == sys.dim,
                    note: None,
                },
                Err(DerivationError::OracleBound { .. }) => CrossCheck {
                    method: "oracle".into(),
                    der: None,
                    agrees: true,
                    note: Some(format!("skipped: |G| = {order} exceeds bound {bound}")),
                },
                Err(e) => return Err(e.into()),
            });
            if n.is_some() {
                cross_checks.push(match dihedral_constraints(ring) {
                    Ok(m) => {
                        let kernel = m.kernel_basis();
                        let mut space = RowSpace::new(field, m.cols());
                        for v in &sys.kernel {
                            space.insert(v)?;
                        }
                        let same = kernel.len() == sys.dim
                            && kernel.iter().all(|v| space.contains(v).unwrap_or(false));
                        CrossCheck {
                            method: "closed-form".into(),
                            der: Some(kernel.len()),
                            agrees: same,
                            note: (!same && kernel.len() == sys.dim)
                                .then(|| "same dimension, different subspace".to_string()),
                        }
                    }
                    Err(DerivationError::Unsupported(why)) => CrossCheck {
                        method: "closed-form".into(),
                        der: None,
                        agrees: true,
                        note: Some(format!("skipped: {why}")),
                    },
                    Err(e) => return Err(e.into()),
                });
            }
        }

        let mut warnings = Vec::new();
        if setup.collapsed {
            warnings.push("characteristic 2: the sign cocycle collapses to the trivial cocycle".to_string());
        }
        if let (Some(n), Some(DihedralSign::Alpha1), false) = (n, setup.cocycle_spec.sign(), setup.collapsed) {
            if n % 2 == 0 && (n / 2) % 2 == 1 {
                let claimed = 3 * (n / 2);
                if claimed != dims.hh1 {
                    warnings.push(format!(
                        "dim HH^1 = {} differs from the commonly quoted value 3n' = {claimed} (n' = {}); \
                         {claimed} equals dim Inn = 2n - n'",
                        dims.hh1,
                        n / 2
                    ));
                }
            }
        }
        if let (Some(n), Some(false)) = (n, regime.p_divides_n) {
            if n % 2 == 1 && setup.cocycle_spec.sign() == Some(DihedralSign::Alpha3) {
                warnings.push(format!(
                    "p does not divide n: the odd-n value (n-1)/2 = {} applies only when p | n",
                    (n - 1) / 2
                ));
            }
        }

        let bases = opts.bases.then(|| Bases {
            der: sys.basis.iter().map(|f| f.to_json(ring)).collect(),
            center: inn.center.iter().map(|z| ring.to_json(z)).collect(),
            hh1: h.representatives.iter().map(|d| d.generator_map(ring).to_json(ring)).collect(),
        });

        Ok(Report {
            config: ConfigEcho {
                group: setup.group_spec.clone(),
                field: field.spec(),
                cocycle: setup.cocycle_spec.clone(),
                order,
                generators: group.generators().iter().map(|&g| group.name(g).to_string()).collect(),
            },
            dims,
            regime,
            cross_checks,
            bases,
            warnings,
        })
    }

    /// True when every cross-check agrees.
    pub fn consistent(&self) -> bool {
        self.cross_checks.iter().all(|c| c.agrees)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let field = if c.field.m == 1 {
            format!("F_{}", c.field.p)
        } else {
            format!("F_{}^{} (modulus {:?})", c.field.p, c.field.m, c.field.modulus)
        };
        let _ = writeln!(s, "group:    {} (order {}, generators {})", group_label(&c.group), c.order, c.generators.join(", "));
        let _ = writeln!(s, "field:    {field}");
        let _ = writeln!(s, "cocycle:  {}", cocycle_label(&c.cocycle));
        let d = &self.dims;
        let _ = writeln!(s, "dim Der = {}, dim Inn = {}, dim Z = {}, dim HH^1 = {}", d.der, d.inn, d.center, d.hh1);
        let r = &self.regime;
        let _ = write!(s, "regime:   p = {}, p | |G|: {}", r.p, r.p_divides_order);
        if let (Some(n), Some(pn)) = (r.n, r.p_divides_n) {
            let _ = write!(s, ", n = {n}, p | n: {pn}");
        }
        s.push('\n');
        for x in &self.cross_checks {
            let der = x.der.map_or("-".to_string(), |v| v.to_string());
            let status = if x.agrees { "ok" } else { "DISAGREE" };
            let _ = write!(s, "check:    {:<12} der = {:<4} {status}", x.method, der);
            if let Some(note) = &x.note {
                let _ = write!(s, " ({note})");
            }
            s.push('\n');
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning:  {w}");
        }
        if let Some(b) = &self.bases {
            let _ = writeln!(s, "center basis:");
            for z in &b.center {
                let _ = writeln!(s, "  {}", terms(z));
            }
            let _ = writeln!(s, "Der basis (f(generators)):");
            for f in &b.der {
                let _ = writeln!(s, "  {}", f.f.iter().map(terms).collect::<Vec<_>>().join(" | "));
            }
            let _ = writeln!(s, "HH^1 representatives:");
            for f in &b.hh1 {
                let _ = writeln!(s, "  {}", f.f.iter().map(terms).collect::<Vec<_>>().join(" | "));
            }
        }
        s
    }
}

fn group_label(g: &GroupSpec) -> String {
    match g {
        GroupSpec::Dihedral { n } => format!("D_{}", 2 * n),
        GroupSpec::Abelian { orders } => orders.iter().map(|o| format!("C_{o}")).collect::<Vec<_>>().join(" x "),
        GroupSpec::Table { mul, .. } => format!("table group of order {}", mul.len()),
    }
}

fn cocycle_label(c: &CocycleSpec) -> String {
    match c {
        CocycleSpec::Trivial => "trivial".into(),
        CocycleSpec::Table { .. } => "explicit table".into(),
        other => other.sign().map(|s| s.label().to_string()).unwrap_or_default(),
    }
}

fn terms(m: &BTreeMap<String, String>) -> String {
    if m.is_empty() {
        return "0".into();
    }
    m.iter().map(|(k, v)| format!("{v}*{k}")).collect::<Vec<_>>().join(" + ")
}
