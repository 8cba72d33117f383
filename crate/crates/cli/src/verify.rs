//! The reproduction harness: every published number with a desk-scale
//! computation behind it.

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, Context as _, Result};
use latgenus::enumerate::{theta_coefficients, EnumConfig};
use latgenus::exact::syntax::parse_vector;
use latgenus::genus::{
    characteristic_coset, eta, eta_direct, f2_certificate, fn_certificate, fn_exhaustive, g4_lower_bound,
    ExhaustiveBudget,
};
use latgenus::lorentz::{
    adjunction_genus, builtin_plumbings, complement_lattice, identify_unimodular, LorentzClass,
};
use latgenus::munoz::{remark_sweep, theta_poly, theta_sweep, BivariatePolynomial, VarPair};
use latgenus::zoo::{from_scaled_model, golay_code, theta_by_modular_identity, NamedLatticeCatalog};
use latgenus::{LatticeHandle, ScaledVector};

use crate::report::{Reference, Status, VerificationItem};
use crate::Budget;

pub struct Context {
    pub catalog: NamedLatticeCatalog,
    pub cfg: EnumConfig,
    pub budget: Budget,
    built: Mutex<HashMap<String, LatticeHandle>>,
}

impl Context {
    pub fn new(catalog: NamedLatticeCatalog, cfg: EnumConfig, budget: Budget) -> Self {
        Self {
            catalog,
            cfg,
            budget,
            built: Mutex::new(HashMap::new()),
        }
    }

    /// Builds a catalog lattice once per context.
    pub fn lattice(&self, name: &str) -> Result<LatticeHandle> {
        if let Some(l) = self.built.lock().expect("lattice cache").get(name) {
            return Ok(l.clone());
        }
        let l = self.catalog.lattice(name).with_context(|| format!("building {name}"))?;
        self.built.lock().expect("lattice cache").insert(name.to_string(), l.clone());
        Ok(l)
    }
}

pub const A24_W: &str = "(1^4,-1^4,0^17)";
pub const A12_W: &str = "((17/13,-9/13^5,4/13^7),(7/13^6,-6/13^7))";
pub const D24_W: &str = "(1/2^24)";
pub const A17A1_W: &str = "((7/6,1/6^13,-5/6^4),(1/2,-1/2))";
pub const A92_W: &str = "((1/2^5,-1/2^5),(1/2^5,-1/2^5))";

/// `(class, root system, genus, lattice)` for the complement checks.
pub const COMPLEMENTS: [(&str, &str, Option<i64>, &str); 9] = [
    ("(7|5,1^23)", "D24", Some(5), "D24"),
    ("(5|1^24)", "A24", Some(6), "A24"),
    ("(11|3^12,1^12)", "A12+A12", Some(9), "A12^2"),
    ("(11|5,3^9,1^14)", "A15+D9", Some(8), "A15D9"),
    ("(9|3^7,1^17)", "A17+E7", Some(7), "A17E7"),
    ("(9|3^8,1^8)", "E8+E8", Some(4), "E8^2"),
    ("(8|4,3,2^8,1^6)", "D8+D8", Some(4), "D8^2"),
    ("(7|2^10,1^8)", "A9+A9", Some(5), "A9^2"),
    (LEECH_CLASS, "0", None, "Leech"),
];

pub const LEECH_CLASS: &str = "(145|51,47,45,43,41,39,37,35,33,31,29,27,25,23,21,19,17,15,13,11,9,7,5,3)";

struct Runner<'a> {
    ctx: &'a Context,
    items: Vec<VerificationItem>,
}

struct Spec<'s> {
    id: &'s str,
    criterion: Option<u8>,
    module: &'static str,
    description: &'s str,
    expected: String,
    reference: Reference,
}

fn spec<'s>(
    id: &'s str,
    criterion: u8,
    module: &'static str,
    description: &'s str,
    expected: impl Into<String>,
    reference: Reference,
) -> Spec<'s> {
    Spec {
        id,
        criterion: Some(criterion),
        module,
        description,
        expected: expected.into(),
        reference,
    }
}

impl Runner<'_> {
    fn check(&mut self, s: Spec<'_>, f: impl FnOnce(&Context) -> Result<String>) {
        let t = Instant::now();
        let (computed, note) = match f(self.ctx) {
            Ok(c) => (c, None),
            Err(e) => ("error".to_string(), Some(format!("{e:#}"))),
        };
        let status = if computed == s.expected {
            Status::Pass
        } else {
            Status::Fail
        };
        self.items.push(VerificationItem {
            id: s.id.to_string(),
            criterion: s.criterion,
            module: s.module,
            description: s.description.to_string(),
            expected: s.expected,
            reference: s.reference,
            computed: Some(computed),
            status,
            note,
            elapsed: t.elapsed(),
        });
    }

    fn full_only(&mut self, s: Spec<'_>, f: impl FnOnce(&Context) -> Result<String>) {
        if self.ctx.budget == Budget::Full {
            self.check(s, f);
        } else {
            self.items.push(VerificationItem {
                id: s.id.to_string(),
                criterion: s.criterion,
                module: s.module,
                description: s.description.to_string(),
                expected: s.expected,
                reference: s.reference,
                computed: None,
                status: Status::Skipped,
                note: Some("needs --budget full".into()),
                elapsed: Default::default(),
            });
        }
    }
}

fn v(s: &str) -> Result<ScaledVector> {
    parse_vector(s).with_context(|| format!("parsing {s}"))
}

fn eta_summary(l: &LatticeHandle, w: &ScaledVector, cfg: &EnumConfig) -> Result<String> {
    let r = eta(l, w, cfg)?;
    let mut parts = vec![format!("eta={}", r.eta_value)];
    for i in (2..=r.extremality.w_norm / 2).step_by(2) {
        parts.push(format!("|S{i}|={}", r.s_counts.get(&i).copied().unwrap_or(0)));
    }
    Ok(parts.join(", "))
}

fn theta_pair(l: &LatticeHandle, cfg: &EnumConfig) -> Result<(u64, u64)> {
    let t = theta_coefficients(l, 4, cfg)?;
    Ok((t[&2], t[&4]))
}

fn leech_norm6() -> ScaledVector {
    let dodecad = golay_code()
        .into_iter()
        .find(|w| w.iter().filter(|&&b| b == 1).count() == 12)
        .expect("the Golay code has dodecads");
    let mut x = [0i64; 24];
    for i in 0..24 {
        x[i] = 2 * dodecad[i] as i64;
    }
    from_scaled_model(&x)
}

fn leech_norm8() -> ScaledVector {
    let mut x = [0i64; 24];
    x[0] = 8;
    from_scaled_model(&x)
}

/// Runs every verification item allowed by the budget.
pub fn verify_paper(ctx: &Context) -> Vec<VerificationItem> {
    let mut r = Runner {
        ctx,
        items: Vec::new(),
    };
    use Reference::*;

    // eta by the S-census and by the direct signed sum
    for (id, lat, w, expected) in [
        ("eta-A24", "A24", A24_W, "eta=52, |S2|=16, |S4|=70"),
        ("eta-A12^2", "A12^2", A12_W, "eta=12, |S2|=5, |S4|=12"),
        ("eta-D24", "D24", D24_W, "eta=1, |S2|=0"),
    ] {
        r.check(spec(id, 1, "genus", "alternating census of S_i^w", expected, Published), |c| {
            eta_summary(&c.lattice(lat)?, &v(w)?, &c.cfg)
        });
        let value = expected.split(',').next().unwrap_or_default().to_string();
        let did = format!("{id}-direct");
        r.check(
            spec(&did, 2, "genus", "signed sum over Min(w+2L) equals the census value", value, Derived),
            |c| Ok(format!("eta={}", eta_direct(&c.lattice(lat)?, &v(w)?, &c.cfg)?)),
        );
    }

    // theta coefficients against a4 = 196560 - 24 a2
    for (lat, expected, reference) in [
        ("A24", "a2=600, a4=182160", Published),
        ("A12^2", "a2=312, a4=189072", Published),
        ("D24", "a2=1104, a4=170064", Derived),
        ("Leech", "a2=0, a4=196560", Published),
    ] {
        let id = format!("theta-{lat}");
        r.check(spec(&id, 3, "zoo", "enumerated a2 and a4", expected, reference), |c| {
            let (a2, a4) = theta_pair(&c.lattice(lat)?, &c.cfg)?;
            Ok(format!("a2={a2}, a4={a4}"))
        });
        let id = format!("theta-identity-{lat}");
        r.check(
            spec(&id, 3, "zoo", "enumerated a4 equals the modular prediction from a2", "holds", Derived),
            |c| {
                let (a2, a4) = theta_pair(&c.lattice(lat)?, &c.cfg)?;
                let want = theta_by_modular_identity(a2 as i64, 4)?;
                Ok(if want == a4 as i128 {
                    "holds".into()
                } else {
                    format!("a4={a4} but identity gives {want}")
                })
            },
        );
    }
    r.full_only(
        spec("theta-Leech-a6", 3, "zoo", "enumerated Leech a6", "a6=16773120", Published),
        |c| {
            let t = theta_coefficients(&c.lattice("Leech")?, 6, &c.cfg)?;
            Ok(format!("a6={}", t[&6]))
        },
    );

    // Leech congruence classes
    r.check(
        spec("leech-class-count", 4, "zoo", "a4/2 + a6/2 + a8/48 + 1 from the modular identity", "16777216", Published),
        |_| {
            let a = |i| theta_by_modular_identity(0, i);
            Ok((a(4)? / 2 + a(6)? / 2 + a(8)? / 48 + 1).to_string())
        },
    );
    r.full_only(
        spec("leech-a8", 4, "zoo", "enumerated Leech a8 against the modular identity", "a8=398034000", Derived),
        |c| {
            let t = theta_coefficients(&c.lattice("Leech")?, 8, &c.cfg)?;
            Ok(format!("a8={}", t[&8]))
        },
    );
    r.check(
        spec("leech-norm8", 4, "genus", "a norm-8 extremal vector of the Leech lattice", "|Min|=48, eta=24", Published),
        |c| {
            let rep = eta(&c.lattice("Leech")?, &leech_norm8(), &c.cfg)?;
            Ok(format!("|Min|={}, eta={}", rep.min_set_size, rep.eta_value))
        },
    );
    r.check(
        spec("leech-norm6", 4, "genus", "certificates from a norm-6 Leech vector", "|Min|=2, f2>=5, f4>=3, f8>=3", Published),
        |c| {
            let l = c.lattice("Leech")?;
            let w = leech_norm6();
            let c2 = f2_certificate(&l, &w, &c.cfg)?;
            let c4 = fn_certificate(&l, &w, 4, &c.cfg)?;
            let c8 = fn_certificate(&l, &w, 8, &c.cfg)?;
            Ok(format!("|Min|={}, f2>={}, f4>={}, f8>={}", c2.min_set_size, c2.value, c4.value, c8.value))
        },
    );
    r.full_only(
        spec("leech-f2-exhaustive", 4, "genus", "f2 over all 2^24 classes of L/2L", "f2=5", Published),
        |c| {
            let rep = fn_exhaustive(&c.lattice("Leech")?, 2, 8, ExhaustiveBudget { max_rank: 24 }, &c.cfg)?;
            if !rep.exhaustive {
                return Err(anyhow!("only {} of {} classes seen", rep.classes_seen, rep.classes_total));
            }
            Ok(format!("f2={}", rep.value.map_or("none".into(), |x| x.to_string())))
        },
    );

    munoz_items(&mut r);

    // f-certificates and the combined lower bound
    for (id, lat, w, n, expected, g4) in [
        ("f2-D24", "D24", D24_W, 2, "f2>=5", 5),
        ("f8-A24", "A24", A24_W, 8, "f8>=4", 6),
        ("f8-A12^2", "A12^2", A12_W, 8, "f8>=4", 6),
        ("f2-A17A1", "A17A1", A17A1_W, 2, "f2>=4, |S2|=4", 4),
        ("f2-A9^2", "A9^2", A92_W, 2, "f2>=4, |S2|=0", 4),
    ] {
        let certify = move |c: &Context| -> Result<(i64, u64)> {
            let cert = fn_certificate(&c.lattice(lat)?, &v(w)?, n, &c.cfg)?;
            Ok((cert.value, cert.s_counts.get(&2).copied().unwrap_or(0)))
        };
        r.check(spec(id, 6, "genus", "certificate from the worked vector", expected, Published), |c| {
            let (value, s2) = certify(c)?;
            Ok(if n == 2 && lat != "D24" {
                format!("f2>={value}, |S2|={s2}")
            } else {
                format!("f{n}>={value}")
            })
        });
        let gid = format!("g4-{lat}");
        r.check(
            spec(&gid, 6, "genus", "combined lower bound on g4", format!("g4>={g4}"), Published),
            |c| {
                let (value, _) = certify(c)?;
                let b = match n {
                    2 => g4_lower_bound(Some(value), None, None, None)?,
                    _ => g4_lower_bound(None, None, Some(value), None)?,
                };
                Ok(format!("g4>={}", b.value))
            },
        );
    }

    // delta
    let even24: Vec<String> = ctx
        .catalog
        .entries()
        .iter()
        .filter(|e| e.rank() == 24 && e.expected.even)
        .map(|e| e.name.clone())
        .collect();
    for name in &even24 {
        let id = format!("delta-{name}");
        r.check(spec(&id, 7, "genus", "delta and the bound 2 delta - 1", "delta=3, g4>=5", Published), |c| {
            let d = characteristic_coset(&c.lattice(name)?, &c.cfg)?.delta;
            let b = g4_lower_bound(None, None, None, Some(d))?;
            Ok(format!("delta={d}, g4>={}", b.value))
        });
    }
    for (name, d) in [("E8", 1), ("Z8", 0)] {
        let id = format!("delta-{name}");
        r.check(spec(&id, 7, "genus", "delta", format!("delta={d}"), Published), |c| {
            Ok(format!("delta={}", characteristic_coset(&c.lattice(name)?, &c.cfg)?.delta))
        });
    }

    // Lorentzian complements
    for (class, roots, genus, name) in COMPLEMENTS {
        let id = format!("complement-{name}");
        let mut expected = format!("roots={roots}, lattice={name}");
        if let Some(g) = genus {
            expected.push_str(&format!(", genus={g}"));
        }
        r.check(spec(&id, 8, "lorentz", class, expected, Published), move |c| {
            let v: LorentzClass = class.parse()?;
            let l = complement_lattice(&v)?;
            let id = identify_unimodular(&l, &c.catalog)?;
            let mut s = format!(
                "roots={}, lattice={}",
                id.fingerprint.label(),
                id.name().unwrap_or("unidentified")
            );
            if genus.is_some() {
                s.push_str(&format!(", genus={}", adjunction_genus(&v)?));
            }
            Ok(s)
        });
    }

    // plumbings
    for p in builtin_plumbings() {
        let lat = p.lattice.clone().unwrap_or_default();
        let id = format!("plumbing-{lat}");
        r.check(spec(&id, 9, "lorentz", &p.name, "gram matches, det=1", Published), |c| {
            let rep = p.verify(&c.catalog)?;
            Ok(format!(
                "gram {}, det={}",
                if rep.gram_matches { "matches" } else { "differs" },
                rep.determinant
            ))
        });
    }

    r.items
}

fn munoz_items(r: &mut Runner<'_>) {
    use Reference::*;
    const RMAX: usize = 128;
    let t = Instant::now();
    let rows = theta_sweep(RMAX, &[2, 3]);
    let sweep_time = t.elapsed();
    let bad = |pred: &dyn Fn(usize) -> bool| -> String {
        let v: Vec<String> = (0..=RMAX).filter(|&r| !pred(r)).map(|r| r.to_string()).collect();
        if v.is_empty() {
            "all".into()
        } else {
            format!("fails at r={}", v.join(","))
        }
    };
    r.check(spec("munoz-integral", 5, "munoz", "theta_r has integer coefficients, r <= 128", "all", Published), |_| {
        Ok(bad(&|k| rows[k][0].integral))
    });
    if let Some(it) = r.items.last_mut() {
        it.elapsed += sweep_time;
    }
    r.check(spec("munoz-mod4", 5, "munoz", "theta_r = +-alpha^r (mod 4), r <= 128", "all", Published), |_| {
        Ok(bad(&|k| rows[k][0].reduces_to.is_some()))
    });
    r.check(
        spec("munoz-mod8", 5, "munoz", "theta_r = +-alpha^r (mod 8) exactly when r = 0, 1 (mod 4)", "all", Published),
        |_| Ok(bad(&|k| rows[k][1].reduces_to.is_some() == (k % 4 <= 1))),
    );
    let displayed = [
        (4, vec![(4, 0, 15), (2, 1, 160), (2, 0, -120), (0, 2, 360), (0, 1, -720), (0, 0, 360)]),
        (5, vec![(5, 0, 105), (3, 1, 1456), (3, 0, 840), (1, 2, 4984), (1, 1, 6160), (1, 0, 3192)]),
    ];
    for (k, terms) in displayed {
        let want = BivariatePolynomial::from_terms(VarPair::AlphaEps, &terms);
        let id = format!("munoz-theta{k}");
        r.check(spec(&id, 5, "munoz", "displayed theta polynomial", want.to_string(), Published), |_| {
            Ok(theta_poly(k)?.to_string())
        });
    }
    r.check(
        spec(
            "munoz-remark",
            5,
            "munoz",
            "alpha^sigma zeta_r normalised, at alpha^2 = beta - 8 eps, is -beta^(r/2) mod 2^k for r = 0 mod 2^(k-1), r <= 128, k <= 6",
            "-b^(r/2) for all",
            Published,
        ),
        |_| {
            let mut wrong = Vec::new();
            for row in remark_sweep(RMAX, 6)? {
                match row.reduces_to {
                    Some(p) if p.sign < 0 && p.exponent as usize == row.r / 2 => {}
                    Some(p) => wrong.push(format!("(k={},r={}):{p}", row.k, row.r)),
                    None => wrong.push(format!("(k={},r={}):not a power", row.k, row.r)),
                }
            }
            Ok(if wrong.is_empty() {
                "-b^(r/2) for all".into()
            } else {
                format!("{} exceptions: {}", wrong.len(), wrong.join(" "))
            })
        },
    );
}
