//! Verification suites over the catalog.
//!
//! Each suite evaluates both sides of an identity on every basis input of the
//! varieties in range and records one check per comparison.

use std::sync::Arc;

use ck_steenrod_core::adams::{
    adams_psi, bott_theta, chern_class, homological_adams, AdamsContext,
};
use ck_steenrod_core::connective::{
    beta, descent_compare, gr_steenrod, gr_steenrod_matrix, gr_steenrod_via, pi_class, pull_filtered, random_lift,
    tau, theta_action, FiltrationElement,
};
use ck_steenrod_core::exactalg::{Coefficient, Integer, Scalar, F2};
use ck_steenrod_core::steenrod::{sq1, Correspondence};
use ck_steenrod_core::varieties::{
    catalog, catalog_morphisms, phi, ChowClass, KClass, SplitKClass, SplitVariety, Variety,
};
use ck_steenrod_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::Report;

pub const SUITES: [&str; 10] =
    ["cartan", "pullback", "adem", "descent", "adams", "riemann-roch", "commutes", "extprod", "lci", "corr"];

/// A flipped entry of one variety's `Sq_1` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fault {
    pub variety: SplitVariety,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub max_dim: Option<usize>,
    pub seed: u64,
    corrupted: Option<Arc<Variety>>,
}

impl SuiteConfig {
    pub fn new(max_dim: Option<usize>, seed: u64) -> Self {
        SuiteConfig { max_dim, seed, corrupted: None }
    }

    pub fn with_fault(mut self, fault: &Fault) -> Result<Self> {
        let v = Variety::shared(&fault.variety)?;
        if fault.row >= v.len() || fault.col >= v.len() {
            return Err(Error::Domain(format!("no entry ({}, {}) in the table of {}", fault.row, fault.col, fault.variety)));
        }
        self.corrupted = Some(Arc::new(v.with_corrupted_sq1(fault.row, fault.col)?));
        Ok(self)
    }

    fn bound(&self, default: usize) -> usize {
        self.max_dim.unwrap_or(default)
    }

    /// The presentation the suites use; the corrupted one if a fault targets it.
    pub fn variety(&self, d: &SplitVariety) -> Result<Arc<Variety>> {
        match &self.corrupted {
            Some(v) if v.descriptor() == d => Ok(v.clone()),
            _ => Variety::shared(d),
        }
    }

    fn varieties(&self, max_dim: usize) -> Result<Vec<Arc<Variety>>> {
        let mut out: Vec<Arc<Variety>> =
            catalog(max_dim, max_dim).iter().map(|d| self.variety(d)).collect::<Result<_>>()?;
        if let Some(v) = &self.corrupted {
            if !out.iter().any(|w| w.descriptor() == v.descriptor()) {
                out.push(v.clone());
            }
        }
        Ok(out)
    }

    fn sq1(&self, x: &ChowClass<F2>) -> Result<ChowClass<F2>> {
        let v = self.variety(x.variety().descriptor())?;
        Ok(sq1(&ChowClass::new(v, x.coeffs().to_vec())?))
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<Report> {
    let report = match name {
        "cartan" => cartan(cfg),
        "pullback" => pullback(cfg),
        "adem" => adem(cfg),
        "descent" => descent(cfg),
        "adams" => adams(cfg),
        "riemann-roch" => riemann_roch(cfg),
        "commutes" => commutes(cfg),
        "extprod" => extprod(cfg),
        "lci" => lci(cfg),
        "corr" => corr(cfg),
        "all" => {
            let mut all = Report::new("all");
            for s in SUITES {
                all.merge(run_suite(s, cfg)?);
            }
            all
        }
        _ => return None,
    };
    Some(report.finish())
}

fn record<T: PartialEq + std::fmt::Display>(
    r: &mut Report,
    id: String,
    anchor: &str,
    v: &Variety,
    basis: &[&str],
    sides: Result<(T, T)>,
) {
    match sides {
        Ok((lhs, rhs)) => r.compare(id, anchor, v.descriptor(), basis, &lhs, &rhs),
        Err(e) => r.error(id, anchor, v.descriptor(), basis, e),
    }
}

/// `x × y` on `X × Y`, left factor slower.
fn external<S: Scalar>(prod: &Arc<Variety>, x: &[S], y: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a.clone() * b.clone());
        }
    }
    debug_assert_eq!(out.len(), prod.len());
    out
}

fn sign(e: i64) -> Coefficient {
    Coefficient::integer(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn factors(d: &SplitVariety) -> Option<(&SplitVariety, &SplitVariety)> {
    match d {
        SplitVariety::Product(a, b) => Some((a, b)),
        _ => None,
    }
}

pub fn cartan(cfg: &SuiteConfig) -> Report {
    const TABLE: &str = "Sq1(x × y) = Sq1(x) × y + x × Sq1(y)";
    const KSIDE: &str = "𝔖1(φ(x × y)) = φ(Sq1(x) × y + x × Sq1(y))";
    let mut r = Report::new("cartan");
    let mut products: Vec<SplitVariety> =
        catalog(cfg.bound(6), cfg.bound(6)).into_iter().filter(SplitVariety::is_product).collect();
    for s in ["P2xP3", "Q2xP2", "Q3xQ2"] {
        let d: SplitVariety = s.parse().expect("catalog descriptor");
        if !products.contains(&d) {
            products.push(d);
        }
    }
    for d in products {
        let run = |r: &mut Report| -> Result<()> {
            let (a, b) = factors(&d).expect("products only");
            let (va, vb, prod) = (cfg.variety(a)?, cfg.variety(b)?, cfg.variety(&d)?);
            for i in 0..va.len() {
                for j in 0..vb.len() {
                    let x = ChowClass::<F2>::basis(&va, i);
                    let y = ChowClass::<F2>::basis(&vb, j);
                    let xy = ChowClass::new(prod.clone(), external(&prod, x.coeffs(), y.coeffs()))?;
                    let rhs = ChowClass::new(prod.clone(), external(&prod, cfg.sq1(&x)?.coeffs(), y.coeffs()))?.add(
                        &ChowClass::new(prod.clone(), external(&prod, x.coeffs(), cfg.sq1(&y)?.coeffs()))?,
                    )?;
                    let names = [va.names()[i].as_str(), vb.names()[j].as_str()];
                    let id = format!("cartan/{d}/{}*{}", names[0], names[1]);
                    record(r, format!("{id}/table"), TABLE, &prod, &names, cfg.sq1(&xy).map(|l| (l, rhs.clone())));
                    let p = xy.pure_dimension().expect("basis cell");
                    let kside = phi(p, &xy).and_then(|g| gr_steenrod(&g)).and_then(|g| {
                        let expected = if p == 0 { g.clone() } else { phi(p - 1, &rhs)? };
                        Ok((g, expected))
                    });
                    record(r, format!("{id}/k-theory"), KSIDE, &prod, &names, kside);
                }
            }
            Ok(())
        };
        if let Err(e) = run(&mut r) {
            r.error(format!("cartan/{d}"), TABLE, &d, &[], e);
        }
    }
    r
}

pub fn pullback(cfg: &SuiteConfig) -> Report {
    const ANCHOR: &str = "f^* Sq1(x) = Sq1(f^* x) + c1(T_f) f^* x";
    let mut r = Report::new("pullback");
    let max = cfg.bound(6);
    let morphisms = match catalog_morphisms(max, max) {
        Ok(m) => m,
        Err(e) => {
            r.error("pullback/catalog", ANCHOR, "catalog", &[], e);
            return r;
        }
    };
    for f in morphisms {
        let y = f.target();
        let c1 = chern_class(1, f.tangent()).map(|c| c.reduce_mod2());
        for i in 0..y.len() {
            let x = ChowClass::<F2>::basis(y, i);
            let sides = (|| {
                let c1 = c1.clone()?;
                let lhs = f.pull_chow(&cfg.sq1(&x)?)?;
                let fx = f.pull_chow(&x)?;
                let rhs = cfg.sq1(&fx)?.add(&c1.mul(&fx)?)?;
                Ok((lhs, rhs))
            })();
            let name = y.names()[i].as_str();
            record(&mut r, format!("pullback/{f}/{name}"), ANCHOR, f.source(), &[name], sides);
        }
    }
    r
}

pub fn adem(cfg: &SuiteConfig) -> Report {
    const SQ: &str = "Sq1 ∘ Sq1 = 0";
    const TAU: &str = "τ_{-1} ∘ τ_{-1} = 0";
    const GR: &str = "𝔖1 ∘ 𝔖1 = 0";
    let mut r = Report::new("adem");
    let ctx = AdamsContext::new(-1).expect("k = -1");
    let varieties = match cfg.varieties(cfg.bound(8)) {
        Ok(v) => v,
        Err(e) => {
            r.error("adem/catalog", SQ, "catalog", &[], e);
            return r;
        }
    };
    for v in varieties {
        let d = v.descriptor();
        let gr = gr_steenrod_matrix(&v);
        for i in 0..v.len() {
            let name = v.names()[i].as_str();
            let x = ChowClass::<F2>::basis(&v, i);
            let sq = cfg.sq1(&x).and_then(|s| cfg.sq1(&s)).map(|s| (s, ChowClass::zero(&v)));
            record(&mut r, format!("adem/{d}/{name}/sq1"), SQ, &v, &[name], sq);
            let tt = tau(&ctx, &FiltrationElement::basis(&v, i))
                .and_then(|t| tau(&ctx, &t))
                .map(|t| (t.class().clone(), KClass::zero(&v)));
            record(&mut r, format!("adem/{d}/{name}/tau"), TAU, &v, &[name], tt);
            let g = gr.as_ref().map_err(Clone::clone).map(|m| {
                let col = m.apply(&m.column(i));
                (ChowClass::new(v.clone(), col).expect("sized"), ChowClass::zero(&v))
            });
            record(&mut r, format!("adem/{d}/{name}/gr"), GR, &v, &[name], g);
        }
    }
    r
}

pub fn descent(cfg: &SuiteConfig) -> Report {
    const DESCENT: &str = "𝔖1(φ(x)) = φ(Sq1(x))";
    const DROP: &str = "τ_{-1}(F_p) ⊆ F_{p-1}";
    const LIFT: &str = "𝔖1 is independent of the lift";
    let mut r = Report::new("descent");
    let ctx = AdamsContext::new(-1).expect("k = -1");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let varieties = match cfg.varieties(cfg.bound(8)) {
        Ok(v) => v,
        Err(e) => {
            r.error("descent/catalog", DESCENT, "catalog", &[], e);
            return r;
        }
    };
    for v in varieties {
        let d = v.descriptor();
        match descent_compare(&v) {
            Ok(rows) => {
                for row in rows {
                    r.compare(format!("descent/{d}/{}", row.name), DESCENT, d, &[&row.name], &row.k_side, &row.chow_side);
                }
            }
            Err(e) => r.error(format!("descent/{d}"), DESCENT, d, &[], e),
        }
        for i in 0..v.len() {
            let name = v.names()[i].as_str();
            let x = FiltrationElement::basis(&v, i);
            let drop = tau(&ctx, &x).and_then(|t| t.verify().map(|_| t)).map(|t| {
                let ok = t.level() == x.level() - 1;
                (ok, true)
            });
            record(&mut r, format!("descent/{d}/{name}/drop"), DROP, &v, &[name], drop);
            let lifts = (|| {
                let g = phi(v.dims()[i], &ChowClass::<F2>::basis(&v, i))?;
                let reference = gr_steenrod(&g)?;
                for _ in 0..20 {
                    let lift = random_lift(&g, &mut rng);
                    let got = gr_steenrod_via(&g, &lift)?;
                    if got != reference {
                        return Ok((format!("{got} via {lift}"), reference.to_string()));
                    }
                }
                Ok((reference.to_string(), reference.to_string()))
            })();
            record(&mut r, format!("descent/{d}/{name}/lifts"), LIFT, &v, &[name], lifts);
        }
    }
    r
}

pub fn adams(cfg: &SuiteConfig) -> Report {
    const COMPOSE: &str = "ψ^k ψ^k' = ψ^{kk'}";
    const THETA: &str = "rank θ^k(y) = k^{rank y}";
    const SCALE: &str = "rank ψ_k(x) = k^{-dim X} rank x";
    const EXT: &str = "ψ_{-1}(x × y) = ψ_{-1}(x) × ψ_{-1}(y)";
    let ks = [-2i64, -1, 2, 3];
    let mut r = Report::new("adams");
    let max = cfg.bound(6);
    for n in 1..=max.min(5) {
        let v = match cfg.variety(&SplitVariety::proj(n)) {
            Ok(v) => v,
            Err(e) => {
                r.error(format!("adams/P{n}"), COMPOSE, format!("P{n}"), &[], e);
                continue;
            }
        };
        for &k in &ks {
            for &k2 in &ks {
                for i in 0..v.len() {
                    let name = v.names()[i].as_str();
                    let x = KClass::<Integer>::basis(&v, i);
                    let sides = (|| {
                        let (c1, c2, c12) = (AdamsContext::new(k)?, AdamsContext::new(k2)?, AdamsContext::new(k * k2)?);
                        Ok((adams_psi(&c1, &adams_psi(&c2, &x)?)?, adams_psi(&c12, &x)?))
                    })();
                    record(&mut r, format!("adams/compose/P{n}/{k},{k2}/{name}"), COMPOSE, &v, &[name], sides);
                }
            }
        }
    }
    let varieties = match cfg.varieties(max) {
        Ok(v) => v,
        Err(e) => {
            r.error("adams/catalog", THETA, "catalog", &[], e);
            return r;
        }
    };
    for v in &varieties {
        let d = v.descriptor();
        let rk = v.factor_count();
        let ys = [
            ("T", Ok(SplitKClass::tangent(v))),
            ("-T", Ok(SplitKClass::tangent(v).neg())),
            ("O(1)", SplitKClass::line(v, &vec![1; rk], 1)),
            ("2O(-1)-O(2)", SplitKClass::line(v, &vec![-1; rk], 2).and_then(|a| a.sub(&SplitKClass::line(v, &vec![2; rk], 1)?))),
        ];
        for &k in &ks {
            let ctx = AdamsContext::new(k).expect("k != 0");
            for (label, y) in &ys {
                let sides = y.clone().and_then(|y| Ok((bott_theta(&ctx, &y)?.rank(), ctx.k_power(y.rank()))));
                record(&mut r, format!("adams/theta/{d}/{k}/{label}"), THETA, v, &[label], sides);
            }
            if k != -1 && !d.is_projective_tower() {
                continue;
            }
            for i in 0..v.len() {
                let name = v.names()[i].as_str();
                let x = KClass::<Integer>::basis(v, i).localize(k);
                let sides = homological_adams(&ctx, &x)
                    .map(|p| (p.rank(), x.rank() * ctx.k_power(-(v.dimension() as i64))));
                record(&mut r, format!("adams/scale/{d}/{k}/{name}"), SCALE, v, &[name], sides);
            }
        }
        let Some((a, b)) = factors(d) else { continue };
        let ctx = AdamsContext::new(-1).expect("k = -1");
        let run = |r: &mut Report| -> Result<()> {
            let (va, vb) = (cfg.variety(a)?, cfg.variety(b)?);
            for i in 0..va.len() {
                for j in 0..vb.len() {
                    let names = [va.names()[i].as_str(), vb.names()[j].as_str()];
                    let sides = (|| {
                        let x = KClass::<Integer>::basis(&va, i).localize(1);
                        let y = KClass::<Integer>::basis(&vb, j).localize(1);
                        let xy = KClass::new(v.clone(), external(v, x.coords(), y.coords()))?;
                        let (px, py) = (homological_adams(&ctx, &x)?, homological_adams(&ctx, &y)?);
                        Ok((homological_adams(&ctx, &xy)?, KClass::new(v.clone(), external(v, px.coords(), py.coords()))?))
                    })();
                    record(r, format!("adams/external/{d}/{}*{}", names[0], names[1]), EXT, v, &names, sides);
                }
            }
            Ok(())
        };
        if let Err(e) = run(&mut r) {
            r.error(format!("adams/external/{d}"), EXT, d, &[], e);
        }
    }
    r
}

pub fn riemann_roch(cfg: &SuiteConfig) -> Report {
    const ANCHOR: &str = "χ(θ^k(-T_X) ψ^k(x)) = χ(x)";
    let mut r = Report::new("riemann-roch");
    let varieties = match cfg.varieties(cfg.bound(6)) {
        Ok(v) => v,
        Err(e) => {
            r.error("riemann-roch/catalog", ANCHOR, "catalog", &[], e);
            return r;
        }
    };
    for v in varieties {
        let d = v.descriptor();
        for k in [-1i64, 2, 3] {
            if k != -1 && !d.is_projective_tower() {
                continue;
            }
            let ctx = AdamsContext::new(k).expect("k != 0");
            for i in 0..v.len() {
                let name = v.names()[i].as_str();
                let x = KClass::<Integer>::basis(&v, i).localize(k);
                let sides = homological_adams(&ctx, &x).map(|p| (p.chi(), x.chi()));
                record(&mut r, format!("riemann-roch/{d}/{k}/{name}"), ANCHOR, &v, &[name], sides);
            }
        }
    }
    r
}

pub fn commutes(cfg: &SuiteConfig) -> Report {
    const ANCHOR: &str = "β τ_{-1} - τ_{-1} β = 2 (-1)^{-p-1} id on F_p";
    let mut r = Report::new("commutes");
    let ctx = AdamsContext::new(-1).expect("k = -1");
    let varieties = match cfg.varieties(cfg.bound(8)) {
        Ok(v) => v,
        Err(e) => {
            r.error("commutes/catalog", ANCHOR, "catalog", &[], e);
            return r;
        }
    };
    for v in varieties {
        let d = v.descriptor();
        for i in 0..v.len() {
            let name = v.names()[i].as_str();
            for p in (v.dims()[i] as i64)..=(v.dimension() as i64) {
                let sides = (|| {
                    let e = FiltrationElement::from_integral(&KClass::basis(&v, i), p)?;
                    let bt = beta(&tau(&ctx, &e)?)?;
                    let tb = tau(&ctx, &beta(&e)?)?;
                    let defect = bt.class().sub(tb.class())?;
                    Ok((defect, e.class().scale(&(Coefficient::integer(2) * sign(-p - 1)))))
                })();
                record(&mut r, format!("commutes/{d}/{name}/p={p}"), ANCHOR, &v, &[name], sides);
            }
        }
    }
    r
}

pub fn extprod(cfg: &SuiteConfig) -> Report {
    const ANCHOR: &str = "τ(x × y) = k^s τ(x) × y + k^q x × τ(y) + β(τ(x) × τ(y)), k = -1";
    let mut r = Report::new("extprod");
    let ctx = AdamsContext::new(-1).expect("k = -1");
    let max = cfg.bound(6);
    for d in catalog(max, max).into_iter().filter(SplitVariety::is_product) {
        let run = |r: &mut Report| -> Result<()> {
            let (a, b) = factors(&d).expect("products only");
            let (va, vb, prod) = (cfg.variety(a)?, cfg.variety(b)?, cfg.variety(&d)?);
            let ext = |x: &FiltrationElement, y: &FiltrationElement| -> Result<FiltrationElement> {
                let class = KClass::new(prod.clone(), external(&prod, x.class().coords(), y.class().coords()))?;
                FiltrationElement::new(class, x.level() + y.level())
            };
            for i in 0..va.len() {
                for j in 0..vb.len() {
                    let names = [va.names()[i].as_str(), vb.names()[j].as_str()];
                    let sides = (|| {
                        let x = FiltrationElement::basis(&va, i);
                        let y = FiltrationElement::basis(&vb, j);
                        let (q, s) = (-x.level(), -y.level());
                        let lhs = tau(&ctx, &ext(&x, &y)?)?;
                        let (tx, ty) = (tau(&ctx, &x)?, tau(&ctx, &y)?);
                        let rhs = ext(&tx, &y)?
                            .scale(&sign(s))
                            .class()
                            .add(ext(&x, &ty)?.scale(&sign(q)).class())?
                            .add(beta(&ext(&tx, &ty)?)?.class())?;
                        Ok((lhs.class().clone(), rhs))
                    })();
                    record(r, format!("extprod/{d}/{}*{}", names[0], names[1]), ANCHOR, &prod, &names, sides);
                }
            }
            Ok(())
        };
        if let Err(e) = run(&mut r) {
            r.error(format!("extprod/{d}"), ANCHOR, &d, &[], e);
        }
    }
    r
}

pub fn lci(cfg: &SuiteConfig) -> Report {
    const ANCHOR: &str = "f^* τ = θ^{-1}(T_f) τ f^* + (-1)^{-p-d} π^{-1}(T_f) f^*";
    let mut r = Report::new("lci");
    let ctx = AdamsContext::new(-1).expect("k = -1");
    let max = cfg.bound(6);
    let morphisms = match catalog_morphisms(max, max) {
        Ok(m) => m,
        Err(e) => {
            r.error("lci/catalog", ANCHOR, "catalog", &[], e);
            return r;
        }
    };
    for f in morphisms {
        let y = f.target();
        let tf = f.tangent();
        let d = f.relative_dimension();
        for i in 0..y.len() {
            let name = y.names()[i].as_str();
            let x = FiltrationElement::basis(y, i);
            let fx = match pull_filtered(&f, &x) {
                Ok(fx) => fx,
                // K pull-back into a quadric is exposed on line-bundle classes only
                Err(Error::UnsupportedDomain(_)) => continue,
                Err(e) => {
                    r.error(format!("lci/{f}/{name}"), ANCHOR, f.source().descriptor(), &[name], e);
                    continue;
                }
            };
            let sides = (|| {
                let lhs = pull_filtered(&f, &tau(&ctx, &x)?)?;
                let a = theta_action(&ctx, tf, &tau(&ctx, &fx)?)?;
                let b = pi_class(&ctx, tf, &fx)?.scale(&sign(-x.level() - d));
                Ok((lhs.class().clone(), a.class().add(b.class())?))
            })();
            record(&mut r, format!("lci/{f}/{name}"), ANCHOR, f.source(), &[name], sides);
        }
    }
    r
}

pub fn corr(cfg: &SuiteConfig) -> Report {
    const PROJ: &str = "q_*(q^* x · z) = x · q_* z";
    const NAT: &str = "q_* Sq1(z) = Sq1(q_* z)";
    const DIAG: &str = "multiplicity of the diagonal is 1";
    const CHAIN: &str = "deg Sq1 p_*(q^*x·r) = deg p_* Sq1(q^*x·r) = deg q_* Sq1(q^*x·r) = deg Sq1(x·q_* r) mod 2";
    let mut r = Report::new("corr");
    let top = (cfg.bound(6) / 2).max(2);
    for a in 1..=top {
        let run = |r: &mut Report| -> Result<()> {
            let x = cfg.variety(&SplitVariety::quadric(a))?;
            let pd = SplitVariety::product(SplitVariety::quadric(a), SplitVariety::quadric(a));
            let p = cfg.variety(&pd)?;
            for keep_left in [true, false] {
                let q = ck_steenrod_core::varieties::CatalogMorphism::projection(&p, keep_left)?;
                let side = if keep_left { "pr1" } else { "pr2" };
                for k in 0..p.len() {
                    let zname = p.names()[k].as_str();
                    let z = ChowClass::<Integer>::basis(&p, k);
                    let qz = q.push_chow(&z)?;
                    for i in 0..x.len() {
                        let xname = x.names()[i].as_str();
                        let xi = ChowClass::<Integer>::basis(&x, i);
                        let sides = (|| Ok((q.push_chow(&q.pull_chow(&xi)?.mul(&z)?)?, xi.mul(&qz)?)))();
                        record(r, format!("corr/{pd}/{side}/proj/{xname}/{zname}"), PROJ, &p, &[xname, zname], sides);
                    }
                    let z2 = z.reduce_mod2();
                    let sides = (|| Ok((q.push_chow(&cfg.sq1(&z2)?)?, cfg.sq1(&q.push_chow(&z2)?)?)))();
                    record(r, format!("corr/{pd}/{side}/nat/{zname}"), NAT, &p, &[zname], sides);
                }
            }
            let m = Correspondence::<Integer>::diagonal(&x).map(|c| (c.multiplicity(), Integer::from(1)));
            record(r, format!("corr/{pd}/diagonal"), DIAG, &p, &[], m);
            for k in (0..p.len()).filter(|&k| p.dims()[k] == a) {
                let rname = p.names()[k].as_str();
                let rc = Correspondence::new(ChowClass::<F2>::basis(&p, k))?;
                for i in 0..x.len() {
                    let xname = x.names()[i].as_str();
                    let sides = rc.degree_chain(&ChowClass::basis(&x, i)).map(|c| {
                        let all_equal = c.iter().all(|e| *e == c[0]);
                        (format!("{} {} {} {}", c[0], c[1], c[2], c[3]), if all_equal {
                            format!("{} {} {} {}", c[0], c[1], c[2], c[3])
                        } else {
                            "four equal degrees".to_string()
                        })
                    });
                    record(r, format!("corr/{pd}/chain/{rname}/{xname}"), CHAIN, &p, &[rname, xname], sides);
                }
            }
            Ok(())
        };
        if let Err(e) = run(&mut r) {
            r.error(format!("corr/Q{a}xQ{a}"), PROJ, format!("Q{a}xQ{a}"), &[], e);
        }
    }
    r
}

/// Convenience for callers that only need the verdict.
pub fn passes(name: &str, cfg: &SuiteConfig) -> bool {
    run_suite(name, cfg).map(|r| r.passed()).unwrap_or(false)
}
