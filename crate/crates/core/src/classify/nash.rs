use crate::blowup::Chart;
use crate::error::{Error, Result};
use crate::forms::{Smoothness, Space, SpaceRef};
use crate::groebner::Submodule;
use crate::poly::{OrderSpec, Poly, VarContext};

/// Charts of the closure of the graph of the Gauss map of a hypersurface,
/// one for each non-vanishing partial derivative `df/dx_i`, with slopes
/// `m_j = (df/dx_j) / (df/dx_i)`. Smooth spaces give their identity chart.
/// The exceptional equations are the pulled-back partials.
pub fn nash_charts(space: &SpaceRef) -> Result<Vec<Chart>> {
    if !space.is_hypersurface() {
        return Err(Error::Unsupported(format!("`{}` is not a hypersurface", space.name())));
    }
    let root = Chart::root(space);
    if space.smoothness() == Smoothness::Smooth {
        return Ok(vec![root]);
    }
    let ctx = space.ctx();
    let n = ctx.len();
    let f = &space.equations()[0];
    let grad: Vec<Poly> = (0..n).map(|i| f.derivative(i)).collect();
    let mut out = Vec::new();
    for i in (0..n).filter(|&i| !grad[i].is_zero()) {
        let mut names: Vec<String> = ctx.names().to_vec();
        let slopes: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        for &j in &slopes {
            let want = format!("m{}", j + 1);
            let name = if names.contains(&want) { ctx.fresh_name(&want, &names) } else { want };
            names.push(name);
        }
        let big = VarContext::new(&names)?;
        let embed: Vec<usize> = (0..n).collect();
        let lift = |p: &Poly| p.embed(&big, &embed);
        let di = lift(&grad[i]);
        let mut gens = vec![lift(f)];
        for (s, &j) in slopes.iter().enumerate() {
            gens.push(&(&Poly::var(&big, n + s) * &di) - &lift(&grad[j]));
        }
        let ideal = Submodule::ideal(&big, &gens, OrderSpec::degrevlex()).groebner().saturate(&di);
        if ideal.is_whole() {
            continue;
        }
        let name = format!("{}_nash_{}", space.name(), ctx.name(i));
        let chart_space = Space::new(&name, &big, ideal.polys(), None)?;
        let images = (0..n).map(|v| Poly::var(&big, v)).collect();
        let exceptional = grad.iter().map(lift).collect();
        out.push(Chart::modification(&name, &root, &chart_space, images, exceptional)?);
    }
    Ok(out)
}
