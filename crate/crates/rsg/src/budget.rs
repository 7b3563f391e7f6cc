//! Search budgets from flags and the `RSG_DEFAULT_BUDGET` variable.

use std::time::Duration;

use rsg_core::search::Budget;

pub const ENV_VAR: &str = "RSG_DEFAULT_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{ENV_VAR}={value:?}: expected NODES or NODES:SECONDS")]
pub struct BudgetError {
    pub value: String,
}

/// Parses `NODES` or `NODES:SECONDS`. Seconds may be fractional; `0`
/// seconds disables the time limit.
pub fn parse_budget(value: &str) -> Result<Budget, BudgetError> {
    let err = || BudgetError {
        value: value.to_owned(),
    };
    let (nodes, secs) = match value.trim().split_once(':') {
        Some((nodes, secs)) => (nodes, Some(secs)),
        None => (value.trim(), None),
    };
    let max_nodes: u64 = nodes.trim().parse().map_err(|_| err())?;
    let time_limit = match secs {
        None => Budget::default().time_limit,
        Some(s) => seconds(s.trim()).ok_or_else(err)?,
    };
    Ok(Budget {
        max_nodes,
        time_limit,
    })
}

/// A non-negative number of seconds; zero means no limit.
pub fn seconds(s: &str) -> Option<Option<Duration>> {
    let secs: f64 = s.parse().ok()?;
    if !secs.is_finite() || secs < 0.0 {
        return None;
    }
    Some((secs > 0.0).then(|| Duration::from_secs_f64(secs)))
}

/// Defaults, then the environment, then explicit flags.
pub fn resolve(
    env: Option<&str>,
    max_nodes: Option<u64>,
    timeout: Option<Option<Duration>>,
) -> Result<Budget, BudgetError> {
    let mut budget = match env {
        Some(value) => parse_budget(value)?,
        None => Budget::default(),
    };
    if let Some(nodes) = max_nodes {
        budget.max_nodes = nodes;
    }
    if let Some(limit) = timeout {
        budget.time_limit = limit;
    }
    Ok(budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        let b = parse_budget("5000").unwrap();
        assert_eq!(b.max_nodes, 5000);
        assert_eq!(b.time_limit, Some(Duration::from_secs(60)));
        let b = parse_budget("10:2.5").unwrap();
        assert_eq!(
            (b.max_nodes, b.time_limit),
            (10, Some(Duration::from_millis(2500)))
        );
        assert_eq!(parse_budget("10:0").unwrap().time_limit, None);
        for bad in ["", "x", "10:", "10:-1", "-3", "1:2:3"] {
            assert!(parse_budget(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn flags_override_environment() {
        let b = resolve(Some("7:1"), Some(9), None).unwrap();
        assert_eq!(
            (b.max_nodes, b.time_limit),
            (9, Some(Duration::from_secs(1)))
        );
        let b = resolve(None, None, Some(None)).unwrap();
        assert_eq!(b.time_limit, None);
    }
}
