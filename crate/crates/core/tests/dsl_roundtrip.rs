use fockcalc::dsl::{parse, render};
use fockcalc::model::TermCatalog;

#[test]
fn catalog_expressions_round_trip() {
    let cat = TermCatalog::build();
    for (name, x) in &cat.exprs {
        let text = render(x);
        let back = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(&back, x, "{name}");
        assert_eq!(render(&back), text);
    }
}

#[test]
fn parsed_expressions_evaluate_like_the_catalog() {
    let cat = TermCatalog::build();
    for name in ["A", "F1", "I5", "I21"] {
        let x = parse(&render(cat.get(name).unwrap())).unwrap();
        assert_eq!(x.eval().unwrap(), cat.eval(name).unwrap(), "{name}");
    }
}
