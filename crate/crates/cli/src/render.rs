//! Report formatting: aligned text, JSON (full precision) and key/value CSV.

use anyhow::Result;
use clap::ValueEnum;

use presence_model::{CalibrationReport, ConditionResult, SweepParameter, SweepPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

fn label_pairs(labels: Option<&[String]>, probs: &[f64]) -> Vec<(String, f64)> {
    match labels {
        Some(names) => names
            .iter()
            .cloned()
            .zip(probs.iter().copied())
            .collect(),
        None => probs
            .iter()
            .copied()
            .enumerate()
            .map(|(i, p)| (i.to_string(), p))
            .collect(),
    }
}

pub fn condition_report(result: &ConditionResult, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(format!("{}\n", serde_json::to_string_pretty(result)?)),
        OutputFormat::Text => {
            let mut out = String::new();
            let q11 = label_pairs(result.q_1_1.labels(), result.q_1_1.probs());
            let q2 = label_pairs(result.q_2.labels(), result.q_2.probs());
            let policy = label_pairs(result.policy.labels(), result.policy.probs());
            out.push_str(&format!("variant:           {}\n", result.variant));
            out.push_str(&format!("observation:       {}\n", result.observation));
            out.push_str(&format!(
                "q_1_1:             {}\n",
                q11.iter()
                    .map(|(n, p)| format!("{n}={p:.6}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            ));
            out.push_str(&format!("evidence:          {:.6}\n", result.evidence));
            out.push_str(&format!("presence (nats):   {:.6}\n", result.presence));
            out.push_str(&format!(
                "q_2:               {}\n",
                q2.iter()
                    .map(|(n, p)| format!("{n}={p:.6}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            ));
            out.push_str(&format!(
                "context_log_pref:  {}\n",
                result
                    .context_log_pref
                    .values()
                    .iter()
                    .map(|v| format!("{v:.6}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            ));
            out.push_str(&format!(
                "efe:               express={:.6}  withhold={:.6}\n",
                result.efe[0], result.efe[1]
            ));
            out.push_str(&format!(
                "policy:            {}\n",
                policy
                    .iter()
                    .map(|(n, p)| format!("{n}={p:.6}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            ));
            out.push_str(&format!("p_express:         {:.6}\n", result.p_express));
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut out = String::from("key,value\n");
            out.push_str(&format!("variant,{}\n", result.variant));
            out.push_str(&format!("observation,{}\n", result.observation));
            for (name, p) in label_pairs(result.q_1_1.labels(), result.q_1_1.probs()) {
                out.push_str(&format!("q_1_1_{name},{p:.6}\n"));
            }
            out.push_str(&format!("evidence,{:.6}\n", result.evidence));
            out.push_str(&format!("presence,{:.6}\n", result.presence));
            for (name, p) in label_pairs(result.q_2.labels(), result.q_2.probs()) {
                out.push_str(&format!("q_2_{name},{p:.6}\n"));
            }
            for (i, v) in result.context_log_pref.values().iter().enumerate() {
                out.push_str(&format!("context_log_pref_{i},{v:.6}\n"));
            }
            out.push_str(&format!("efe_express,{:.6}\n", result.efe[0]));
            out.push_str(&format!("efe_withhold,{:.6}\n", result.efe[1]));
            out.push_str(&format!("p_express,{:.6}\n", result.p_express));
            Ok(out)
        }
    }
}

pub fn presence_report(result: &ConditionResult, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let value = serde_json::json!({
                "observation": result.observation,
                "evidence": result.evidence,
                "presence": result.presence,
                "q_1_1": result.q_1_1,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
        }
        OutputFormat::Text => Ok(format!(
            "observation:      {}\nevidence:         {:.6}\npresence (nats):  {:.6}\n",
            result.observation, result.evidence, result.presence
        )),
        OutputFormat::Csv => Ok(format!(
            "key,value\nobservation,{}\nevidence,{:.6}\npresence,{:.6}\n",
            result.observation, result.evidence, result.presence
        )),
    }
}

pub fn sweep_csv(parameter: SweepParameter, points: &[SweepPoint]) -> String {
    let mut out = String::from("param,value,p_express\n");
    for point in points {
        out.push_str(&format!(
            "{},{:.6},{:.6}\n",
            parameter.name(),
            point.value,
            point.p_express
        ));
    }
    out
}

pub fn calibration_summary(report: &CalibrationReport) -> String {
    let b = &report.best;
    let mut out = String::new();
    out.push_str(&format!(
        "targets:        p_express(direct)={:.4}  p_express(averted)={:.4}\n",
        report.targets.p_express_direct, report.targets.p_express_averted
    ));
    out.push_str(&format!(
        "grid points:    {} (tolerance {:.3})\n",
        report.evaluated, report.tolerance
    ));
    out.push_str(&format!(
        "best point:     zeta2={:.3}  normalization={:?}  null_efe={:.3}\n",
        b.zeta_2, b.preference_normalization, b.null_policy_efe
    ));
    out.push_str(&format!(
        "best values:    p_express(direct)={:.6}  p_express(averted)={:.6}\n",
        b.p_express_direct, b.p_express_averted
    ));
    out.push_str(&format!(
        "residuals:      direct={:.6}  averted={:.6}\n",
        b.residual_direct, b.residual_averted
    ));
    out.push_str(&format!(
        "within tolerance: {}\n",
        if report.achieved { "yes" } else { "no" }
    ));
    out
}
