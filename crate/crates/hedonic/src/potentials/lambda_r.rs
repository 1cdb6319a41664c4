use num_rational::Ratio;

use crate::core::{DeviationMove, Partition};
use crate::games::{Color, DiversityGame};

use super::monitor::{Monitor, MonitorReading, ReadingValue};

/// Per red agent: |R|+1 when its coalition's red fraction is ≤ 1/2 or 1,
/// m when it is m/(m+1) with 2 ≤ m ≤ |R|, otherwise `None`.
pub fn lambda_r(game: &DiversityGame, p: &Partition) -> Vec<Option<u64>> {
    let reds = game.red_count() as u64;
    (0..game.n())
        .filter(|&a| game.color(a) == Color::Red)
        .map(|a| {
            let f = game.ratio_key(p.coalition_of(a).members());
            if f <= Ratio::new(1, 2) || f == Ratio::from_integer(1) {
                Some(reds + 1)
            } else {
                let m = *f.numer();
                (*f.denom() == m + 1 && (2..=reds).contains(&m)).then_some(m)
            }
        })
        .collect()
}

/// Diagnostic only: reports red agents whose value is undefined.
pub struct LambdaRMonitor<'g> {
    game: &'g DiversityGame,
}

impl<'g> LambdaRMonitor<'g> {
    pub fn new(game: &'g DiversityGame) -> Self {
        LambdaRMonitor { game }
    }

    fn read(&self, p: &Partition) -> MonitorReading {
        let vals = lambda_r(self.game, p);
        let violations = vals
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(k, _)| format!("lambda_r undefined for red agent #{k}"))
            .collect();
        let ints = vals.iter().map(|v| v.map_or(-1, |x| x as i64)).collect();
        MonitorReading::new("lambda-r", ReadingValue::Ints(ints), violations)
    }
}

impl Monitor for LambdaRMonitor<'_> {
    fn name(&self) -> &'static str {
        "lambda-r"
    }

    fn start(&mut self, start: &Partition) -> MonitorReading {
        self.read(start)
    }

    fn observe(&mut self, _pre: &Partition, _mv: &DeviationMove, post: &Partition) -> MonitorReading {
        self.read(post)
    }
}
