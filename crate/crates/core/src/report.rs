//! The analysis report printed by the `qsdesign` binary.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::combinatorics::pair_count;
use crate::design::{Design, DesignError};
use crate::graph::{block_graph_unchecked, srg_check, SrgParams};
use crate::profile::{profile_with_cap, DesignProfile};
use crate::spectrum::{srg_spectrum, Spectrum};
use crate::tightness::{
    tightness_certificate_for, CertificateStatus, FourSubsetCount, TightnessCertificate,
};

/// Everything known about one design.
///
/// Field order is the JSON key order. `srg` and `spectrum` describe the
/// block graph and are present only for quasi-symmetric designs whose
/// block graph is strongly regular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub design_name: String,
    pub profile: DesignProfile,
    pub srg: Option<SrgParams>,
    pub spectrum: Option<Spectrum>,
    pub certificate: Verdict,
}

/// A certificate, or the reason the design is out of scope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Verdict {
    Certified(Box<TightnessCertificate>),
    Rejected { rejection: String },
}

impl Report {
    pub fn certificate(&self) -> Option<&TightnessCertificate> {
        match &self.certificate {
            Verdict::Certified(c) => Some(c),
            Verdict::Rejected { .. } => None,
        }
    }

    /// True unless a certificate was produced and marked invalid.
    pub fn is_consistent(&self) -> bool {
        self.certificate()
            .map_or(true, TightnessCertificate::is_valid)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Plain-text rendering; the last line is the tightness verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.profile;
        let opt = |o: Option<usize>| o.map_or_else(|| "varies".to_string(), |n| n.to_string());
        let list = |xs: &[usize]| {
            xs.iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };

        let _ = writeln!(out, "design: {}", self.design_name);
        let _ = writeln!(
            out,
            "v = {}, b = {}, k = {}, r = {}, lambda2 = {}",
            p.v,
            p.b,
            p.k,
            opt(p.r),
            opt(p.lambda2)
        );
        let _ = writeln!(
            out,
            "intersection numbers: {{{}}} (degree s = {})",
            list(&p.intersections),
            p.s
        );
        let _ = writeln!(out, "strength: t = {} (e = {})", p.t, p.e);

        let cert = match &self.certificate {
            Verdict::Rejected { rejection } => {
                let _ = writeln!(out, "quasi-symmetric: no ({rejection})");
                let _ = writeln!(out, "TIGHT: not applicable, design is not quasi-symmetric");
                return out;
            }
            Verdict::Certified(c) => c,
        };
        let (x, y) = (p.x.unwrap_or_default(), p.y.unwrap_or_default());
        let _ = writeln!(out, "quasi-symmetric: yes (x = {x}, y = {y})");
        match (&self.srg, &self.spectrum) {
            (Some(srg), Some(spectrum)) => {
                let _ = writeln!(out, "block graph: {srg}, spectrum {spectrum}");
            }
            (Some(srg), None) => {
                let _ = writeln!(out, "block graph: {srg}");
            }
            _ => {
                let _ = writeln!(out, "block graph: not strongly regular");
            }
        }
        let ok = |b: bool| if b { "ok" } else { "FAILED" };
        let _ = writeln!(out, "Gram identity: {}", ok(cert.gram_identity_ok));
        let eigen = cert
            .predicted_mtm_eigenvalues
            .iter()
            .map(|e| format!("{}^{}", e.value, e.multiplicity))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(
            out,
            "M^T M eigenvalues: {eigen} (rank check {})",
            ok(cert.mtm_spectrum_ok)
        );
        let _ = writeln!(
            out,
            "rank of M: {} of {} columns ({})",
            cert.rank.rank, cert.rank.cols, cert.rank.method
        );
        let _ = writeln!(out, "f_p M = (k-1) g_p: {}", ok(cert.fx_mapping_ok));
        if let Some(dec) = &cert.mmt_decomposition {
            let _ = writeln!(
                out,
                "M M^T = {} I + {} J + {} A(T({})): entries {} / {} / {}",
                dec.c_identity,
                dec.c_ones,
                dec.c_adjacency,
                p.v,
                dec.diagonal_entry(),
                dec.adjacent_entry(),
                dec.non_adjacent_entry()
            );
        }
        let _ = writeln!(out, "4-subset count: {}", cert.lambda4);
        match &cert.status {
            CertificateStatus::Valid => {
                let _ = writeln!(out, "certificate: VALID");
            }
            CertificateStatus::Invalid { step, detail } => {
                let _ = writeln!(out, "certificate: INVALID at {step}: {detail}");
            }
        }

        let pairs = pair_count(p.v);
        let verdict = if !cert.is_tight {
            format!("TIGHT: no — b = {} < C({},2) = {}", p.b, p.v, pairs)
        } else {
            match cert.lambda4 {
                FourSubsetCount::Constant(n) => {
                    format!("TIGHT: yes — 4-design with lambda4 = {n}")
                }
                FourSubsetCount::Inapplicable => format!(
                    "TIGHT: yes — b = C({},2) = {}, no block holds 4 points (k = {})",
                    p.v, pairs, p.k
                ),
                FourSubsetCount::NonConstant => "TIGHT: yes — but 4-subset counts vary".to_string(),
            }
        };
        out.push_str(&verdict);
        out.push('\n');
        out
    }
}

/// Profiles `d` and, when it is quasi-symmetric, certifies it.
///
/// `strength_cap` bounds the strength search (values below 2 are raised
/// to 2). Fails only when the blocks are not all the same size.
pub fn analyze(
    d: &Design,
    design_name: &str,
    strength_cap: Option<usize>,
) -> Result<Report, DesignError> {
    let cap = strength_cap.map_or(usize::MAX, |c| c.max(2));
    let profile = profile_with_cap(d, cap)?;
    let (srg, spectrum, certificate) = match profile.quasi_symmetric() {
        Err(reason) => (
            None,
            None,
            Verdict::Rejected {
                rejection: reason.to_string(),
            },
        ),
        Ok((_, y)) => {
            let srg = srg_check(&block_graph_unchecked(d, y)).ok();
            let spectrum = srg.as_ref().and_then(|s| srg_spectrum(s).ok());
            let cert = tightness_certificate_for(d, &profile).expect("profile is quasi-symmetric");
            (srg, spectrum, Verdict::Certified(Box::new(cert)))
        }
    };
    Ok(Report {
        design_name: design_name.to_string(),
        profile,
        srg,
        spectrum,
        certificate,
    })
}
