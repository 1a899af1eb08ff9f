use maitred::emit::{figure_rows, write_figure1, write_figure5};

fn render(write: fn(&mut Vec<u8>, &[maitred::emit::FigureRow]) -> maitred::Result<()>) -> String {
    let rows = figure_rows(3..=20).unwrap();
    let mut buf = Vec::new();
    write(&mut buf, &rows).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn figure1_matches_golden() {
    assert_eq!(render(|b, r| write_figure1(b, r)), include_str!("golden/figure1_3_20.csv"));
}

#[test]
fn figure5_matches_golden() {
    assert_eq!(render(|b, r| write_figure5(b, r)), include_str!("golden/figure5_3_20.csv"));
}

#[test]
fn optimum_dominates_every_strategy() {
    for row in figure_rows(3..=100).unwrap() {
        assert!(row.v_opt >= row.e_stilde && row.e_stilde >= row.e_s, "n={}", row.n);
        if row.n >= 4 {
            assert!(row.e_s > row.e_w, "n={}", row.n);
        }
    }
}
