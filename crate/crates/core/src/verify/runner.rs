//! Parallel, deterministic sweep over a tuple space.

use std::ops::ControlFlow;
use std::sync::Mutex;

use rayon::prelude::*;

use super::engine::Engine;
use super::enumerate::TupleSpace;
use super::report::{Report, Value, Witness};
use super::{VerifyError, VerifyOptions};
use crate::algebra::{Basis, Element};
use crate::prelie::{BilinearProduct, PreLieError};

/// Outcome of one tuple: `None` when the identity holds, otherwise both
/// sides.
pub type TupleOutcome = Result<Option<(Value, Value)>, PreLieError>;

/// Runs `f` inside a dedicated pool when a thread count is requested.
pub fn with_pool<R: Send>(
    opts: &VerifyOptions,
    f: impl FnOnce() -> R + Send,
) -> Result<R, VerifyError> {
    match opts.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| VerifyError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Evaluates `check` on every tuple of `space` (indices into `bases`) and
/// reports the first failure in enumeration order. Each worker thread keeps
/// its own memoizing engine for the whole sweep.
pub fn run_tuples<F>(
    prelie: &dyn BilinearProduct,
    zinbiel: Option<&dyn BilinearProduct>,
    bases: &[Basis],
    space: &TupleSpace,
    identity: &str,
    opts: &VerifyOptions,
    check: F,
) -> Result<Report, VerifyError>
where
    F: Fn(&mut Engine, &[u32]) -> TupleOutcome + Sync,
{
    let arity = space.arity();
    with_pool(opts, || {
        let workers = rayon::current_num_threads().max(1);
        let engines: Vec<Mutex<Engine>> = (0..workers)
            .map(|_| Mutex::new(Engine::new(prelie, zinbiel, bases)))
            .collect();
        let mut done = 0u64;
        let flow = space.for_each_chunk(opts.chunk.max(1), |chunk| {
            let first = chunk
                .par_chunks(arity)
                .enumerate()
                .find_map_first(|(i, t)| {
                    let slot = rayon::current_thread_index().unwrap_or(0) % workers;
                    let mut eng = engines[slot].lock().expect("engine lock");
                    match check(&mut eng, t) {
                        Ok(None) => None,
                        Ok(Some(sides)) => Some((i, Ok(sides))),
                        Err(e) => Some((i, Err(e))),
                    }
                });
            match first {
                None => {
                    done += (chunk.len() / arity) as u64;
                    ControlFlow::Continue(())
                }
                Some((i, outcome)) => {
                    let t = &chunk[i * arity..(i + 1) * arity];
                    ControlFlow::Break((done + i as u64 + 1, t.to_vec(), outcome))
                }
            }
        });
        match flow {
            ControlFlow::Continue(()) => Ok(Report::pass(done)),
            ControlFlow::Break((count, t, outcome)) => {
                let (lhs, rhs) = outcome?;
                let ctx = prelie.ctx();
                let inputs = t
                    .iter()
                    .map(|&id| Value::Element(Element::basis(ctx, bases[id as usize].clone())))
                    .collect();
                Ok(Report::fail(
                    count,
                    Witness {
                        identity: identity.to_string(),
                        inputs,
                        lhs,
                        rhs,
                    },
                ))
            }
        }
    })?
}
