use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{GroupError, Result};

/// Cooperative cancellation for long searches.
#[derive(Clone, Debug, Default)]
pub struct SearchControl {
    cancel: Option<Arc<AtomicBool>>,
    deadline: Option<Instant>,
}

impl SearchControl {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        SearchControl {
            cancel: None,
            deadline: Some(Instant::now() + timeout),
        }
    }

    pub fn with_flag(flag: Arc<AtomicBool>) -> Self {
        SearchControl {
            cancel: Some(flag),
            deadline: None,
        }
    }

    pub fn check(&self) -> Result<()> {
        if let Some(flag) = &self.cancel {
            if flag.load(Ordering::Relaxed) {
                return Err(GroupError::Cancelled);
            }
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(GroupError::Cancelled);
            }
        }
        Ok(())
    }
}
