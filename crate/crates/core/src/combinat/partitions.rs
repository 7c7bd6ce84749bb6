use crate::{Error, Result};

pub const PARTITION_CAP: usize = 12;

/// Set partitions of `{0, …, n-1}` via restricted growth strings. Each
/// partition is a list of blocks; blocks are increasing and ordered by their
/// least element.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    n: usize,
    rgs: Vec<usize>,
    done: bool,
}

pub fn set_partitions(n: usize) -> Result<SetPartitions> {
    if n > PARTITION_CAP {
        return Err(Error::SizeCapExceeded {
            what: "set partition ground set".into(),
            size: n,
            cap: PARTITION_CAP,
        });
    }
    Ok(SetPartitions {
        n,
        rgs: vec![0; n],
        done: false,
    })
}

impl Iterator for SetPartitions {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let blocks_count = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); blocks_count];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        // Advance: rightmost position that can grow.
        let mut i = self.n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let prefix_max = self.rgs[..i].iter().copied().max().unwrap_or(0);
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for r in &mut self.rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
        }
        Some(blocks)
    }
}
