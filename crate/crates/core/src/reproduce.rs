//! Named scenarios with stored expected values, reported as CSV or JSON rows.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ag_bounds::{PoleOrders, Tier};
use crate::codes::rghw_oracle;
use crate::error::{Error, Result};
use crate::hermitian::{diff_table, g1, HermitianFamily};
use crate::ramp::{g2, hermitian_profile_bound, hermitian_profile_closed, mds_rghw, mds_scheme};
use crate::search::SearchConfig;
use crate::semigroup::{z_closed_form, NumericalSemigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Ex1,
    Ex2,
    Ex3,
    Ex4,
    Ex5,
    Ex6,
    Table1,
    Table2,
    Table3,
    Table4,
    Lemma9,
    Mds,
}

impl Target {
    pub const ALL: [Target; 12] = [
        Target::Ex1,
        Target::Ex2,
        Target::Ex3,
        Target::Ex4,
        Target::Ex5,
        Target::Ex6,
        Target::Table1,
        Target::Table2,
        Target::Table3,
        Target::Table4,
        Target::Lemma9,
        Target::Mds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Ex1 => "ex1",
            Target::Ex2 => "ex2",
            Target::Ex3 => "ex3",
            Target::Ex4 => "ex4",
            Target::Ex5 => "ex5",
            Target::Ex6 => "ex6",
            Target::Table1 => "table1",
            Target::Table2 => "table2",
            Target::Table3 => "table3",
            Target::Table4 => "table4",
            Target::Lemma9 => "lemma9",
            Target::Mds => "mds",
        }
    }

    fn fixture(self) -> Option<&'static str> {
        Some(match self {
            Target::Ex1 => include_str!("../fixtures/ex1.json"),
            Target::Ex2 => include_str!("../fixtures/ex2.json"),
            Target::Ex3 => include_str!("../fixtures/ex3.json"),
            Target::Ex4 => include_str!("../fixtures/ex4.json"),
            Target::Ex5 => include_str!("../fixtures/ex5.json"),
            Target::Ex6 => include_str!("../fixtures/ex6.json"),
            Target::Table1 => include_str!("../fixtures/table1.json"),
            Target::Table2 => include_str!("../fixtures/table2.json"),
            Target::Table3 => include_str!("../fixtures/table3.json"),
            Target::Table4 => include_str!("../fixtures/table4.json"),
            Target::Lemma9 | Target::Mds => return None,
        })
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Target::ALL.iter().map(|t| t.name()).collect();
                Error::InvalidInput(format!(
                    "unknown target `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Deserialize)]
struct Fixture {
    description: String,
    expected: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub scenario: String,
    pub q: Option<i64>,
    pub mu1: Option<i64>,
    pub mu2: Option<i64>,
    pub m: Option<i64>,
    pub tier: Option<String>,
    /// `exact`, `lower-bound` or `upper-bound` when the row carries a computed quantity.
    pub kind: Option<String>,
    pub value: i64,
    pub expected: Option<i64>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub target: String,
    pub description: String,
    pub rows: Vec<ReportRow>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.matches)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        rows_to_csv(&self.rows)
    }
}

pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

pub fn rows_from_csv(text: &str) -> Result<Vec<ReportRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Default)]
struct Rows {
    rows: Vec<ReportRow>,
    notes: Vec<String>,
}

impl Rows {
    fn push(&mut self, scenario: impl Into<String>, value: i64) -> &mut ReportRow {
        self.rows.push(ReportRow {
            scenario: scenario.into(),
            value,
            ..ReportRow::default()
        });
        self.rows.last_mut().unwrap()
    }
}

impl ReportRow {
    fn q(&mut self, q: i64) -> &mut Self {
        self.q = Some(q);
        self
    }

    fn mus(&mut self, mu1: i64, mu2: i64) -> &mut Self {
        self.mu1 = Some(mu1);
        self.mu2 = Some(mu2);
        self
    }

    fn m(&mut self, m: i64) -> &mut Self {
        self.m = Some(m);
        self
    }

    fn tier(&mut self, t: &str) -> &mut Self {
        self.tier = Some(t.into());
        self
    }

    fn reference(&mut self, v: i64) -> &mut Self {
        self.expected = Some(v);
        self
    }
}

/// Runs a scenario and compares it against its stored expected values.
pub fn reproduce(target: Target, cfg: &SearchConfig) -> Result<Report> {
    let mut out = Rows::default();
    let description = match target {
        Target::Ex1 => {
            nested_pair(&mut out, "ex1", 12, 8, cfg)?;
            let h = HermitianFamily::new(4)?;
            for gammas in [&[10, 12][..], &[9, 12], &[9, 10], &[9, 10, 12]] {
                let id = gammas
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join("-");
                out.push(
                    format!("ex1-support-{id}"),
                    h.orders().support_bound(gammas)?.1,
                )
                .q(4)
                .tier("shifted");
            }
            None
        }
        Target::Ex2 => {
            nested_pair(&mut out, "ex2", 10, 5, cfg)?;
            None
        }
        Target::Ex3 => {
            ex3(&mut out, cfg)?;
            None
        }
        Target::Ex4 => {
            ex4(&mut out)?;
            None
        }
        Target::Ex5 => {
            ex5(&mut out)?;
            None
        }
        Target::Ex6 => {
            ex6(&mut out)?;
            None
        }
        Target::Table1 => {
            for q in [4u32, 5, 7, 8, 16] {
                for (m, d) in diff_table(q, 3..=q as usize + 1)? {
                    out.push(format!("table1-q{q}-m{m}"), d)
                        .q(q as i64)
                        .m(m as i64);
                }
            }
            None
        }
        Target::Table2 => {
            g_rows(&mut out, "table2", 8, 9);
            None
        }
        Target::Table3 => {
            g_rows(&mut out, "table3", 16, 16);
            None
        }
        Target::Table4 => {
            codimension_three_intervals(&mut out, cfg)?;
            None
        }
        Target::Lemma9 => {
            for a in 2..=8i64 {
                let s = NumericalSemigroup::new(&[a as u64, a as u64 + 1])?;
                for mu in 1..=a + 1 {
                    for m in 1..=mu {
                        let z = s.z_function(mu, m, cfg)? as i64;
                        out.push(format!("lemma9-a{a}-mu{mu}-m{m}"), z)
                            .m(m)
                            .reference(z_closed_form(a, mu, m)?);
                    }
                }
            }
            Some("brute-force Z(<a, a+1>, mu, m) against the closed form, a = 2..8".to_string())
        }
        Target::Mds => {
            mds(&mut out, cfg)?;
            Some("nested Reed-Solomon pairs over GF(8): exhaustive RGHWs and profiles against the MDS formulas".into())
        }
    };
    let description = match target.fixture() {
        Some(text) => {
            let fixture: Fixture =
                serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            for (key, &v) in &fixture.expected {
                let row = out
                    .rows
                    .iter_mut()
                    .find(|r| &r.scenario == key)
                    .ok_or_else(|| {
                        Error::Internal(format!("{target}: no row produced for fixture key {key}"))
                    })?;
                row.expected = Some(v);
            }
            fixture.description
        }
        None => description.expect("formula-checked targets describe themselves"),
    };
    for row in &mut out.rows {
        row.matches = row.expected.is_none_or(|e| e == row.value);
    }
    Ok(Report {
        target: target.name().into(),
        description,
        rows: out.rows,
        notes: out.notes,
    })
}

fn nested_pair(out: &mut Rows, id: &str, mu1: i64, mu2: i64, cfg: &SearchConfig) -> Result<()> {
    let h = HermitianFamily::new(4)?;
    let o = h.orders();
    out.push(format!("{id}-dim-mu1"), o.dim(mu1) as i64)
        .q(4)
        .mus(mu1, mu2);
    out.push(format!("{id}-dim-mu2"), o.dim(mu2) as i64)
        .q(4)
        .mus(mu1, mu2);
    let ell = o.dim(mu1) - o.dim(mu2);
    for tier in [Tier::Closed, Tier::Shifted, Tier::ExactSet] {
        for m in 1..=ell {
            let v = o.rghw_bound(mu1, mu2, m, tier, cfg)?.value;
            out.push(format!("{id}-{tier}-m{m}"), v)
                .q(4)
                .mus(mu1, mu2)
                .m(m as i64)
                .tier(tier.name());
        }
    }
    Ok(())
}

/// The printed `H*` of length 64 whose last nine entries are the listed tail.
pub fn printed_tail_h_star(h: &HermitianFamily) -> Result<PoleOrders> {
    let mut hs: Vec<i64> = h.orders().h_star()[..55].to_vec();
    hs.extend([65, 66, 67, 69, 70, 71, 74, 75, 79]);
    PoleOrders::new(h.n(), h.semigroup().clone(), hs)
}

fn ex3(out: &mut Rows, cfg: &SearchConfig) -> Result<()> {
    let h = HermitianFamily::new(4)?;
    let fixture = printed_tail_h_star(&h)?;
    let (mu1, mu2) = (69, 65);
    out.push("ex3-dim-mu1", fixture.dim(mu1) as i64)
        .q(4)
        .mus(mu1, mu2);
    out.push("ex3-dim-mu2", fixture.dim(mu2) as i64)
        .q(4)
        .mus(mu1, mu2);
    for gamma in [69, 67, 66] {
        out.push(
            format!("ex3-orbit-{gamma}"),
            fixture.support_bound(&[gamma])?.0 as i64,
        )
        .q(4);
    }
    let closed = fixture.rghw_bound(mu1, mu2, 3, Tier::Closed, cfg)?.value;
    out.push("ex3-closed-m3", closed)
        .q(4)
        .mus(mu1, mu2)
        .m(3)
        .tier("closed");
    for m in 1..=3 {
        let v = fixture.rghw_bound(mu1, mu2, m, Tier::ExactSet, cfg)?.value;
        out.push(format!("ex3-exact-set-m{m}"), v)
            .q(4)
            .mus(mu1, mu2)
            .m(m as i64)
            .tier("exact-set");
    }
    let truth = h.orders();
    let tail: Vec<String> = truth.h_star()[55..].iter().map(i64::to_string).collect();
    let note = format!(
        "the rank-computed H* ends {}, not 65,66,67,69,70,71,74,75,79; with it dim C(69) - dim C(65) = {}",
        tail.join(","),
        truth.dim(mu1) - truth.dim(mu2)
    );
    log::info!("ex3: {note}");
    out.notes.push(note);
    for m in 1..=truth.dim(mu1) - truth.dim(mu2) {
        let v = truth.rghw_bound(mu1, mu2, m, Tier::ExactSet, cfg)?.value;
        out.push(format!("ex3-rank-h-star-exact-set-m{m}"), v)
            .q(4)
            .mus(mu1, mu2)
            .m(m as i64)
            .tier("exact-set");
    }
    Ok(())
}

fn ex4(out: &mut Rows) -> Result<()> {
    let (q, n) = (8i64, 512i64);
    let p = hermitian_profile_closed(q, n - 130, 9)?.profile;
    out.push("ex4-t1", p.t[0]).q(q).m(1);
    out.push("ex4-r1", p.r[0]).q(q).m(1);
    out.push("ex4-t3-plus-1", p.t[2] + 1).q(q).m(3);
    out.push("ex4-r3", p.r[2]).q(q).m(3);
    out.push("ex4-t9-plus-1", p.t[8] + 1).q(q).m(9);
    out.push("ex4-r9", p.r[8]).q(q).m(9);
    // a group of size r_1 reveals at most max{m : t_m + 1 ≤ r_1} symbols
    let most = (1..=9).filter(|&m| p.t[m - 1] < p.r[0]).max().unwrap_or(0);
    out.push("ex4-max-info-at-158", most as i64).q(q);
    exact_region_rows(out, "ex4", q);
    out.push("ex4-conductor-minus-1", q * (q - 1) - 1).q(q);
    Ok(())
}

fn exact_region_rows(out: &mut Rows, id: &str, q: i64) {
    let n = q * q * q;
    let c = q * (q - 1);
    // 2c - 2 + μ̃ < μ < n - c, written in terms of n - μ
    out.push(format!("{id}-exact-lower"), n - (n - c)).q(q);
    out.push(format!("{id}-exact-upper-plus-mu-tilde"), n - (2 * c - 2))
        .q(q);
}

fn ex5(out: &mut Rows) -> Result<()> {
    let (q, n, offset) = (16i64, 4096i64, 1000i64);
    let p = hermitian_profile_closed(q, n - offset, 16)?.profile;
    out.push("ex5-t1-plus-1", p.t[0] + 1 - offset).q(q).m(1);
    out.push("ex5-r1", p.r[0] - offset).q(q).m(1);
    out.push("ex5-t11-plus-1", p.t[10] + 1 - offset).q(q).m(11);
    out.push("ex5-r5", p.r[4] - offset).q(q).m(5);
    out.push("ex5-t16-plus-1", p.t[15] + 1 - offset).q(q).m(16);
    out.push("ex5-r16", p.r[15] - offset).q(q).m(16);
    exact_region_rows(out, "ex5", q);
    Ok(())
}

/// The nested pairs `(γ_{s+3}, γ_s)` of codimension 3, with `γ_0 = -1`.
pub fn codimension_three_pairs(orders: &PoleOrders) -> Vec<(i64, i64)> {
    let hs = orders.h_star();
    (0..hs.len().saturating_sub(2))
        .map(|s| (hs[s + 2], if s == 0 { -1 } else { hs[s - 1] }))
        .collect()
}

/// `μ1` values of codimension-3 pairs where the refined bounds on `t_m` can differ from the closed one.
pub fn refinable_mu1(orders: &PoleOrders) -> Vec<i64> {
    let h = orders.semigroup();
    let n = orders.len() as i64;
    let top = orders.h_star().last().copied().unwrap_or(0);
    codimension_three_pairs(orders)
        .into_iter()
        .map(|p| p.0)
        .filter(|&mu1| {
            let run = (0..3).all(|k| orders.in_h_star(mu1 - k));
            let thinner = (n..=top + h.conductor())
                .any(|x| h.contains(x) && !orders.in_h_star(x) && !h.contains(x - mu1));
            !run || thinner
        })
        .collect()
}

fn ex6(out: &mut Rows) -> Result<()> {
    let h = HermitianFamily::new(4)?;
    let o = h.orders();
    let hs = o.h_star();
    out.push("ex6-h-star-len", hs.len() as i64).q(4);
    for (i, &g) in hs[..7].iter().enumerate() {
        out.push(format!("ex6-h-star-head-{}", i + 1), g).q(4);
    }
    for (i, &g) in hs[hs.len() - 8..].iter().enumerate() {
        out.push(format!("ex6-h-star-tail-{}", i + 1), g).q(4);
    }
    let pairs = codimension_three_pairs(o);
    out.push("ex6-pairs", pairs.len() as i64).q(4);
    for (i, &(mu1, mu2)) in pairs.iter().enumerate() {
        out.push(format!("ex6-pair-{}-mu1", i + 1), mu1)
            .q(4)
            .mus(mu1, mu2);
        out.push(format!("ex6-pair-{}-mu2", i + 1), mu2)
            .q(4)
            .mus(mu1, mu2);
    }
    let s1 = refinable_mu1(o);
    for (i, &mu1) in s1.iter().enumerate() {
        out.push(format!("ex6-s1-{}", i + 1), mu1).q(4);
    }
    let mut s2: Vec<i64> = s1
        .iter()
        .map(|mu1| {
            let s = pairs.iter().position(|p| p.0 == *mu1).unwrap();
            pairs[pairs.len() - 1 - s].0
        })
        .collect();
    s2.sort_unstable();
    for (i, &mu1) in s2.iter().enumerate() {
        out.push(format!("ex6-s2-{}", i + 1), mu1).q(4);
    }
    out.push("ex6-s1-len", s1.len() as i64).q(4);
    out.push("ex6-s2-len", s2.len() as i64).q(4);
    let mut union: Vec<i64> = s1.iter().chain(&s2).copied().collect();
    union.sort_unstable();
    union.dedup();
    out.push("ex6-union-len", union.len() as i64).q(4);
    out.notes.push(
        "mu1 = 10 is not refinable for t_m: 8, 9, 10 all lie in H* and H* \\ (10 + H) = H \\ (10 + H); it is still covered through the r_m side"
            .into(),
    );
    Ok(())
}

fn g_rows(out: &mut Rows, id: &str, q: i64, mu_tilde: i64) {
    for m in 1..=mu_tilde {
        out.push(format!("{id}-g1-m{m}"), g1(m, q)).q(q).m(m);
    }
    for m in 1..=mu_tilde {
        out.push(format!("{id}-g2-m{m}"), g2(m, mu_tilde, q))
            .q(q)
            .m(m);
    }
}

fn codimension_three_intervals(out: &mut Rows, cfg: &SearchConfig) -> Result<()> {
    let h = HermitianFamily::new(4)?;
    let o = h.orders();
    let s1 = refinable_mu1(o);
    let pairs = codimension_three_pairs(o);
    let n = h.n() as i64;
    for (s, &(mu1, mu2)) in pairs.iter().enumerate() {
        let (p, entries) = hermitian_profile_bound(&h, mu1, mu2, cfg)?;
        let mirror = pairs[pairs.len() - 1 - s].0;
        let printed = s1.contains(&mu1) || s1.contains(&mirror);
        for e in &entries {
            let m = e.m as i64;
            let (t_id, r_id) = if printed {
                (
                    format!("table4-mu{mu1}-m{m}-t"),
                    format!("table4-mu{mu1}-m{m}-r"),
                )
            } else {
                (
                    format!("table4-residual-mu{mu1}-m{m}-t"),
                    format!("table4-residual-mu{mu1}-m{m}-r"),
                )
            };
            let t = out
                .push(t_id, p.t[e.m - 1])
                .q(4)
                .mus(mu1, mu2)
                .m(m)
                .tier(e.t_tier.name());
            if !printed {
                t.reference(n - mu1 + [-1, 3, 6][e.m - 1]);
            }
            let r = out
                .push(r_id, p.r[e.m - 1])
                .q(4)
                .mus(mu1, mu2)
                .m(m)
                .tier(e.r_tier.name());
            if !printed {
                r.reference(n - mu1 + [7, 10, 14][e.m - 1]);
            }
        }
    }
    Ok(())
}

fn mds(out: &mut Rows, cfg: &SearchConfig) -> Result<()> {
    for n in 2..=7usize {
        for k1 in 1..=n {
            for k2 in 0..k1 {
                let (s, p) = mds_scheme(8, n, k1, k2)?;
                let id = format!("mds-n{n}-k{k1}-{k2}");
                let (d1, d2) = (s.c2().dual(), s.c1().dual());
                let exact = s.profile_oracle(cfg)?;
                for m in 1..=k1 - k2 {
                    let (a, b) = mds_rghw(n, k1, k2, m);
                    let mi = m as i64;
                    out.push(
                        format!("{id}-m{m}-primal"),
                        rghw_oracle(s.c1(), s.c2(), m, cfg)? as i64,
                    )
                    .q(8)
                    .m(mi)
                    .reference(a as i64);
                    out.push(
                        format!("{id}-m{m}-dual"),
                        rghw_oracle(&d1, &d2, m, cfg)? as i64,
                    )
                    .q(8)
                    .m(mi)
                    .reference(b as i64);
                    out.push(format!("{id}-m{m}-t"), exact.t[m - 1])
                        .q(8)
                        .m(mi)
                        .reference(p.t[m - 1]);
                    out.push(format!("{id}-m{m}-r"), exact.r[m - 1])
                        .q(8)
                        .m(mi)
                        .reference(p.r[m - 1]);
                }
                out.push(format!("{id}-t1"), exact.t[0])
                    .q(8)
                    .reference(k2 as i64);
                out.push(format!("{id}-r-ell"), exact.reconstruction())
                    .q(8)
                    .reference(k1 as i64);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets_parse() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("ex7".parse::<Target>().is_err());
    }

    #[test]
    fn csv_round_trip() {
        let report = reproduce(Target::Table2, &SearchConfig::default()).unwrap();
        let csv = report.to_csv();
        let rows = rows_from_csv(&csv).unwrap();
        assert_eq!(rows, report.rows);
        assert_eq!(rows_to_csv(&rows), csv);
        let json = report.to_json();
        assert_eq!(Report::from_json(&json).unwrap().to_json(), json);
    }
}
