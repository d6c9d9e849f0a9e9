use sugra11_core::backgrounds::{cahen_wallach, maximal_cw_lambda, CWData};
use sugra11_core::geometry::{FormBasis, FormField};
use sugra11_core::ring::RingElem;
use sugra11_core::scalar::rat;
use sugra11_core::sugra::{holonomy_probe, Background, BackgroundMeta};
use std::time::Instant;

fn main() {
    // perturbed CW: A_* metric but flux with extra generic legs
    let base = cahen_wallach(&CWData::new(maximal_cw_lambda(), rat(3, 1))).unwrap();
    let ch = base.chart().clone();
    let mut flux = FormField::zero(&ch, 4, FormBasis::Coordinate);
    flux.insert(vec![1, 2, 3, 4], RingElem::int(&ch, 3));
    flux.insert(vec![5, 6, 7, 8], RingElem::int(&ch, 1));
    flux.insert(vec![2, 5, 8, 10], RingElem::constant(&ch, rat(1, 2)));
    flux.insert(vec![0, 2, 6, 9], RingElem::var(&ch, 3));
    let bg = Background::new(
        BackgroundMeta::Custom { name: "perturbed-cw".into() },
        base.metric().clone(),
        flux,
    )
    .unwrap();
    let t = Instant::now();
    let (dim, viol) = holonomy_probe(&bg, 2, 3, 0).unwrap();
    println!("perturbed CW flux: dim_lower={dim} violation={viol}  [{:?}]", t.elapsed());
}
