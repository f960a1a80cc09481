use nilgeom::euclid_oracle::Geometry;
use nilgeom::incidence::{intersect_detail, perspective_points, PappusPairing};
use nilgeom::triangle_surface::TriangleSurface;
use nilgeom::{NilPoint, Tolerances, TranslationCurve};

fn show(name: &str, p: NilPoint) {
    println!("  {{\"name\": \"{name}\", \"coords\": [{}, {}, {}]}},", p.x, p.y, p.z);
}

fn main() {
    let tol = Tolerances::default();
    let geom = Geometry::Nil;

    println!("== desargues_fig1 ==");
    let a = [
        NilPoint::new(0.0, 0.0, 0.0),
        NilPoint::new(1.0, 0.0, 0.0),
        NilPoint::new(0.0, 1.0, 1.0),
    ];
    let t = TriangleSurface::new(geom, a).unwrap();
    let s = NilPoint::new(0.3, 0.4, 0.46);
    println!("F(S) = {:e}", t.functional(s).unwrap());
    let b = perspective_points(geom, s, &a, &[0.4, 0.6, 0.7]).unwrap();
    for (i, p) in b.iter().enumerate() {
        show(&format!("B{}", i + 1), *p);
        println!("    F(B{}) = {:e}", i + 1, t.functional(*p).unwrap());
    }
    let mut meets = Vec::new();
    for (i, j, label) in [(0usize, 1usize, "M12"), (0, 2, "M13"), (1, 2, "M23")] {
        let (sa, _) = geom.curve_through(a[i], a[j]).unwrap();
        let (sb, _) = geom.curve_through(b[i], b[j]).unwrap();
        let m = intersect_detail(geom, &sa, &sb, &tol).unwrap();
        let p = m.point.proper().unwrap();
        show(label, p);
        println!("    residual {:e}", m.residual);
        meets.push(p);
    }

    println!("== pappus_fig2 ==");
    let r1 = NilPoint::new(0.1, 0.8, 0.84);
    let r2 = NilPoint::new(0.9, 0.3, 0.435);
    println!("F(R1) = {:e}", t.functional(r1).unwrap());
    println!("F(R2) = {:e}", t.functional(r2).unwrap());
    let (ga, la) = geom.curve_through(a[0], a[1]).unwrap();
    let (gb, lb) = geom.curve_through(r1, r2).unwrap();
    println!("la = {la}, lb = {lb}");
    let a_params = [0.15, 0.45, 0.8];
    let b_params = [0.1 * lb, 0.55 * lb, 0.95 * lb];
    println!("b_params = [{}, {}, {}]", b_params[0], b_params[1], b_params[2]);
    let apts: Vec<NilPoint> = a_params.iter().map(|&p| geom.eval(&ga, p)).collect();
    let bpts: Vec<NilPoint> = b_params.iter().map(|&p| geom.eval(&gb, p)).collect();
    for (i, p) in apts.iter().enumerate() {
        show(&format!("PA{}", i + 1), *p);
    }
    for (i, p) in bpts.iter().enumerate() {
        show(&format!("PB{}", i + 1), *p);
        println!("    F(PB{}) = {:e}", i + 1, t.functional(*p).unwrap());
    }
    for (k, ((i1, j1), (i2, j2))) in PappusPairing::Paper.index_pairs().into_iter().enumerate() {
        let (c1, _) = geom.curve_through(apts[i1], bpts[j1]).unwrap();
        let (c2, _) = geom.curve_through(apts[i2], bpts[j2]).unwrap();
        let m = intersect_detail(geom, &c1, &c2, &tol).unwrap();
        let p = m.point.proper().unwrap();
        show(&format!("M{}", k + 1), p);
        println!("    residual {:e}", m.residual);
    }

    println!("== menelaus check ==");
    let tf = TriangleSurface::new(
        geom,
        [
            NilPoint::new(0.0, 0.0, 0.0),
            NilPoint::new(1.0, 0.0, 0.0),
            NilPoint::new(0.0, 0.0, 1.0),
        ],
    )
    .unwrap();
    let (trans, _) =
        TranslationCurve::through(NilPoint::new(0.5, 0.0, 0.0), NilPoint::new(0.25, 0.0, 0.75))
            .unwrap();
    let report = nilgeom::incidence::check_menelaus(&tf, &trans, &tol).unwrap();
    println!("menelaus fibre report: {report:?}");
}
