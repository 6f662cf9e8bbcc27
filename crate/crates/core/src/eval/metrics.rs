use crate::error::{Error, Result};
use crate::similarity::ScoredPair;

/// Scores sorted descending; ties keep input order, which no metric depends on.
fn descending(scored: &[ScoredPair]) -> Vec<(f64, bool)> {
    let mut v: Vec<(f64, bool)> = scored.iter().map(|s| (s.score, s.is_positive())).collect();
    v.sort_by(|a, b| b.0.total_cmp(&a.0));
    v
}

/// Consecutive runs of equal scores as `(positives, negatives)` counts, in
/// descending score order.
pub(crate) fn tie_blocks(scored: &[ScoredPair]) -> Vec<(f64, usize, usize)> {
    let mut blocks: Vec<(f64, usize, usize)> = Vec::new();
    for (score, pos) in descending(scored) {
        match blocks.last_mut() {
            Some(b) if b.0 == score => {
                if pos {
                    b.1 += 1
                } else {
                    b.2 += 1
                }
            }
            _ => blocks.push((score, pos as usize, (!pos) as usize)),
        }
    }
    blocks
}

pub(crate) fn class_counts(scored: &[ScoredPair]) -> (usize, usize) {
    let p = scored.iter().filter(|s| s.is_positive()).count();
    (p, scored.len() - p)
}

/// Mann-Whitney estimate `(R_pos - P(P+1)/2) / (P N)` with average ranks for
/// tied scores.
pub fn auroc(scored: &[ScoredPair]) -> Result<f64> {
    let (p, n) = class_counts(scored);
    if p == 0 || n == 0 {
        return Err(Error::UndefinedMetric("AUROC"));
    }
    // Ranks ascend with score; walk blocks from the lowest.
    let mut rank_sum = 0.0;
    let mut below = 0usize;
    for &(_, bp, bn) in tie_blocks(scored).iter().rev() {
        let size = bp + bn;
        let avg_rank = below as f64 + (size as f64 + 1.0) / 2.0;
        rank_sum += bp as f64 * avg_rank;
        below += size;
    }
    let (p, n) = (p as f64, n as f64);
    Ok((rank_sum - p * (p + 1.0) / 2.0) / (p * n))
}

/// Average precision: mean over positives of the precision at the point
/// where that positive's tied block is fully included.
pub fn auprc(scored: &[ScoredPair]) -> Result<f64> {
    let (p, _) = class_counts(scored);
    if p == 0 {
        return Err(Error::UndefinedMetric("AUPRC"));
    }
    let (mut tp, mut seen) = (0usize, 0usize);
    let mut sum = 0.0;
    for (_, bp, bn) in tie_blocks(scored) {
        tp += bp;
        seen += bp + bn;
        sum += bp as f64 * (tp as f64 / seen as f64);
    }
    Ok(sum / p as f64)
}

/// `(proposed - baseline) / baseline * 100`, undefined for a zero baseline.
pub fn relative_gain(baseline: f64, proposed: f64) -> Option<f64> {
    (baseline != 0.0).then(|| (proposed - baseline) / baseline * 100.0)
}
