//! Report types shared by the CLI and the C interface: structured documents
//! mirroring each command's result, serializable to JSON and renderable as
//! text. Field orders and sort orders are stable, so identical inputs yield
//! byte-identical machine output.

use std::fmt::Write as _;

use serde::Serialize;

use crate::freeness::{BalancedProfile, FreenessVerdict};
use crate::geometry::{
    char_poly, f_vector, line_profile, Arrangement, CharPoly, FVector, GeomError, LineProfile,
};
use crate::search::{ChainCertificate, StuckCertificate};

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub ell: usize,
    pub field: String,
    pub f_vector: FVector,
    pub mu_total: usize,
    pub char_poly: CharPoly,
    pub char_poly_display: String,
    pub line_profiles: Vec<LineProfile>,
    pub verdict: FreenessVerdict,
}

pub fn analyze(arr: &Arrangement, verdict: FreenessVerdict) -> Result<AnalyzeReport, GeomError> {
    let lat = arr.lattice();
    let chi = char_poly(&lat)?;
    let line_profiles = (0..arr.len())
        .map(|i| line_profile(&lat, i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AnalyzeReport {
        ell: arr.len(),
        field: arr.context().to_string(),
        f_vector: f_vector(&lat),
        mu_total: lat.mu_total(),
        char_poly: chi,
        char_poly_display: chi.to_string(),
        line_profiles,
        verdict,
    })
}

impl AnalyzeReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lines:    {}", self.ell);
        let _ = writeln!(out, "field:    {}", self.field);
        let _ = writeln!(out, "F-vector: {}", self.f_vector);
        let _ = writeln!(out, "mu:       {}", self.mu_total);
        let _ = writeln!(out, "chi:      {}", self.char_poly_display);
        let _ = writeln!(out, "verdict:  {}", self.verdict);
        let _ = writeln!(out, "per-line profiles (n, F_H):");
        for p in &self.line_profiles {
            let _ = writeln!(out, "  line {:>2}: n = {}, F_H = {}", p.line_index + 1, p.n, p.fh);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeReport {
    pub ell: usize,
    pub verdict: FreenessVerdict,
    pub cross_checked: bool,
}

impl FreeReport {
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.verdict);
        if self.cross_checked {
            out.push_str("cross-check: classification and Ziegler criterion agree\n");
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InductiveReport {
    pub ell: usize,
    pub verdict: FreenessVerdict,
    pub chain: Option<ChainCertificate>,
}

impl InductiveReport {
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.verdict);
        match &self.chain {
            Some(chain) => {
                out.push_str("inductively free; one admissible filtration:\n");
                let _ = write!(out, "{chain}");
            }
            None => out.push_str("no inductive filtration exists\n"),
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StuckReport {
    pub ell: usize,
    pub verdict: FreenessVerdict,
    pub stuck: Option<StuckCertificate>,
}

impl StuckReport {
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.verdict);
        match &self.stuck {
            Some(cert) => {
                out.push_str("STUCK: no free neighbor exists\n");
                let _ = writeln!(
                    out,
                    "  deletions: all {} single deletions are non-free",
                    cert.deletion_verdicts.len()
                );
                let _ = writeln!(
                    out,
                    "  additions: exhaustive search at n in {:?} (completeness bound {}) found {} candidates, none free",
                    cert.targets,
                    cert.bound,
                    cert.candidates.len()
                );
                out.push_str("  hence the arrangement is free but not recursively free\n");
            }
            None => out.push_str("not stuck: a free neighbor exists (or the arrangement is not free)\n"),
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfilesReport {
    pub ell_max: usize,
    pub profiles: Vec<BalancedProfile>,
}

impl ProfilesReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "balanced free profiles with ell <= {}: {}\n",
            self.ell_max,
            self.profiles.len()
        );
        for p in &self.profiles {
            let _ = writeln!(out, "  {p}");
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub steps: usize,
    pub final_ell: usize,
    pub verified: bool,
}

impl ReplayReport {
    pub fn render(&self) -> String {
        format!(
            "replayed {} moves to an arrangement of {} lines; every intermediate is free as claimed\n",
            self.steps, self.final_ell
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub items: Vec<VerifyItem>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            let _ = writeln!(
                out,
                "[{}] {:<28} {:>6} ms  {}",
                if item.passed { "PASS" } else { "FAIL" },
                item.name,
                item.millis,
                item.detail
            );
        }
        let _ = writeln!(
            out,
            "{}: {}/{} items passed",
            if self.passed { "OK" } else { "FAILED" },
            self.items.iter().filter(|i| i.passed).count(),
            self.items.len()
        );
        out
    }
}
