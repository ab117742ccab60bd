//! Monotonicity from `theta_n < beta_n <= alpha_{n+1} < theta_{n+1}`.

use rayon::prelude::*;

use crate::ramanujan::hirschhorn_bounds;

use super::witness::{ball_order, Quantity, Witness};
use super::{depends, Method, ProofConfig, ProofStep};

/// `alpha_n < theta_n` and `theta_n < beta_n`.
pub fn sandwich_witness(n: u64, policy: &crate::ball::PrecisionPolicy) -> Witness {
    let (alpha, beta) = hirschhorn_bounds(n);
    Witness::Batch {
        items: vec![
            ball_order(Quantity::exact(alpha), Quantity::Theta { n }, policy),
            ball_order(Quantity::Theta { n }, Quantity::exact(beta), policy),
        ],
    }
}

pub fn verify_envelope_proof(cfg: &ProofConfig) -> Vec<ProofStep> {
    let policy = &cfg.policy;
    let items: Vec<Witness> = (1..=cfg.sandwich_to).into_par_iter().map(|n| sandwich_witness(n, policy)).collect();
    let mut steps = vec![ProofStep::new(
        "envelope.sandwich",
        format!(
            "alpha_n < theta_n < beta_n for n = 1..{} with alpha_n = 1 - 11/(8n) + 5/(8n^2) and \
             beta_n = 1 - 11/(8n) + 11/(8n^2)",
            cfg.sandwich_to
        ),
        Method::BallComparison,
        "1 - 11/(8n) + 5/(8n^2) < theta_n < 1 - 11/(8n) + 11/(8n^2)",
        Witness::Batch { items },
    )];
    steps.push(ProofStep::new(
        "envelope.base",
        "theta_1 < theta_2 < theta_3",
        Method::BallComparison,
        "theta_1 < theta_2 < theta_3",
        Witness::Batch {
            items: vec![
                ball_order(Quantity::Theta { n: 1 }, Quantity::Theta { n: 2 }, policy),
                ball_order(Quantity::Theta { n: 2 }, Quantity::Theta { n: 3 }, policy),
            ],
        },
    ));
    steps.push(depends(
        "envelope.chain",
        format!(
            "for n >= 3, theta_n < beta_n <= alpha_{{n+1}} < theta_{{n+1}}; the envelope is certified \
             for n <= {} and taken as the known double inequality beyond",
            cfg.sandwich_to
        )
        .as_str(),
        "theta_n < beta_n <= alpha_{n+1} < theta_{n+1}",
        &[
            "envelope.sandwich",
            "staircase.equivalence",
            "staircase.denominator-positive",
            "staircase.quadratic-positive",
        ],
    ));
    steps.push(depends(
        "envelope.conclusion",
        "theta_n is strictly increasing for n >= 1",
        "theta_1 < theta_2 < theta_3 < ...",
        &["envelope.base", "envelope.chain"],
    ));
    steps
}
