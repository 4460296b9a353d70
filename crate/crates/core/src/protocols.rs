//! Two-agent cut-and-choose.
//!
//! The cutter splits the items with the first leximin allocation of the
//! instance in which both agents share the cutter's valuation. The chooser
//! then takes the piece it values more (the smaller bitmask on a tie).

use serde::Serialize;

use crate::allocation::Allocation;
use crate::bundle::Bundle;
use crate::efficiency::leximin_set;
use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutAndChoose {
    pub cutter: usize,
    pub chooser: usize,
    /// The two pieces as cut, in the order of the cutter's leximin allocation.
    pub pieces: [Bundle; 2],
    pub allocation: Allocation,
}

/// Agent 0 cuts, agent 1 chooses.
pub fn cut_and_choose(inst: &Instance, budget: u64) -> Result<CutAndChoose> {
    cut_and_choose_with_cutter(inst, 0, budget)
}

pub fn cut_and_choose_with_cutter(inst: &Instance, cutter: usize, budget: u64) -> Result<CutAndChoose> {
    if inst.agents() != 2 {
        return Err(Error::Unsupported(format!(
            "cut-and-choose needs exactly 2 agents, got {}",
            inst.agents()
        )));
    }
    if cutter > 1 {
        return Err(Error::AgentOutOfRange {
            agent: cutter,
            agents: 2,
        });
    }
    let chooser = 1 - cutter;
    let shared = inst.with_shared_valuation(cutter, 2)?;
    let first = leximin_set(&shared, budget)?
        .into_iter()
        .next()
        .expect("the allocation space is never empty");
    let pieces = [first.bundle(0), first.bundle(1)];

    let (p, q) = (pieces[0], pieces[1]);
    let pick = match inst.level(chooser, p).cmp(&inst.level(chooser, q)) {
        std::cmp::Ordering::Greater => p,
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Equal => p.min(q),
    };
    let rest = if pick == p { q } else { p };
    let mut bundles = vec![Bundle::EMPTY; 2];
    bundles[chooser] = pick;
    bundles[cutter] = rest;
    Ok(CutAndChoose {
        cutter,
        chooser,
        pieces,
        allocation: Allocation::for_instance(inst, bundles)?,
    })
}
