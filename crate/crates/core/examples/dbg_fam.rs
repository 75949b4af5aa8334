use eqdeg::basicdeg::*;
use eqdeg::chartab::CharacterTable;
use eqdeg::gs1::GS1Class;
use eqdeg::lattice::*;
use eqdeg::samples;
fn main() {
    let ctx = GammaO2::new(samples::s4());
    let tab = CharacterTable::compute(&ctx.gamma).unwrap();
    let d = DegreeCtx::new(&ctx, &tab);
    let tr = samples::el(&ctx.gamma, &[vec![0, 1]]);
    let cl = tab.el_class[tr as usize];
    let mut w = [usize::MAX; 5];
    for (i, chi) in tab.real_chars.iter().enumerate() {
        let slot = match (chi[0].round() as i64, chi[cl].round() as i64) {
            (1, 1) => 0, (1, -1) => 1, (2, _) => 2, (3, 1) => 3, (3, -1) => 4,
            _ => unreachable!(),
        };
        w[slot] = i;
    }
    for slot in [3usize, 4] {
        let l = 1u32;
        println!("== W{slot}, l=1: Gamma x S1 gradient degree ==");
        let gs1 = d.grad_basic_gs1(IrrKind::TypeIII { j: w[slot], l });
        for (id, c) in &gs1 {
            match ctx.gs1_class(*id) {
                GS1Class::Prod(h) => println!("  {c} * Prod({})", ctx.gclasses[h].name),
                GS1Class::Twisted(t) => println!("  {c} * Twisted(K order {}, fold {}, phi {:?})", t.k.len(), t.fold, t.phi.iter().map(|a| format!("{a}")).collect::<Vec<_>>()),
            }
        }
        println!("== W{slot}, l=1: Gamma x O2 gradient degree ==");
        let go2 = d.grad_basic_go2(IrrKind::TypeIII { j: w[slot], l });
        for (id, c) in &go2.coeffs {
            println!("  {:>2} * {}  ({:?})", c, ctx.render_name(*id), ctx.class_stratum(*id));
        }
    }
}
