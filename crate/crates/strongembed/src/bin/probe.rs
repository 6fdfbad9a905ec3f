use strongembed::embedding::{is_closed_2cell, planar_embed, surface_id, trace_faces};
use strongembed::fixtures;
use strongembed::rings::find_odd_ring;
use strongembed::surgery::insert_crosscap_on_edge;

fn main() {
    // All single-flip projective schemes of the cube that stay closed 2-cell.
    let base = planar_embed(&fixtures::cube_graph()).unwrap();
    for e in base.graph().edges() {
        let s = insert_crosscap_on_edge(&base, e).unwrap();
        if surface_id(&s).unwrap().is_projective_plane() && is_closed_2cell(&s).unwrap() {
            let lens: Vec<usize> = trace_faces(&s).unwrap().iter().map(|f| f.len()).collect();
            match find_odd_ring(&s) {
                Ok(Some(r)) => println!("cube flip {e}: faces {lens:?} -> ring len {}", r.len()),
                Ok(None) => println!("cube flip {e}: faces {lens:?} -> NONE"),
                Err(err) => println!("cube flip {e}: faces {lens:?} -> err {err}"),
            }
        }
    }
    let m8 = fixtures::search_cubic_projective(&fixtures::mobius_ladder_graph(4)).unwrap();
    let lens: Vec<usize> = trace_faces(&m8).unwrap().iter().map(|f| f.len()).collect();
    match find_odd_ring(&m8) {
        Ok(Some(r)) => println!("mobius8: faces {lens:?} -> ring len {}", r.len()),
        Ok(None) => println!("mobius8: faces {lens:?} -> NONE"),
        Err(err) => println!("mobius8: faces {lens:?} -> err {err}"),
    }
}
