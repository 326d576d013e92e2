use automaton_groups::machines::lamplighter_automaton;

fn main() {
    let a = lamplighter_automaton();
    let eight = a.eight_automata().unwrap();
    let names = ["A", "dA", "iA", "idA", "diA", "didA", "idiA", "ididA"];
    for i in 0..8 {
        for j in 0..8 {
            let iso = eight[i].find_isomorphism(&eight[j]);
            print!("{}", if iso.is_some() { "1" } else { "0" });
        }
        println!("  {}", names[i]);
    }
    // A vs i(A) specifically
    let ia = a.invert().unwrap();
    match a.find_isomorphism(&ia) {
        Some(iso) => println!("A ~ iA via states {:?} letters {:?}", iso.state_pairs(&a, &ia), iso.letter_map),
        None => println!("A !~ iA"),
    }
    // count automorphisms of A
    let mut count = 0;
    for _ in 0..1 {
        // brute force via repeated search is not enough; count manually
    }
    let d = a.dual();
    let mut isos = 0;
    // count all isomorphisms A -> dA by brute force
    fn all_bij(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n { out.push(cur.clone()); return; }
            for y in 0..n { if !used[y] { used[y]=true; cur.push(y); rec(n,cur,used,out); cur.pop(); used[y]=false; } }
        }
        rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
    for sm in all_bij(3) {
        for lm in all_bij(3) {
            let ok = (0..3).all(|s| (0..3).all(|x| {
                sm[a.transition(s,x)] == d.transition(sm[s], lm[x]) && lm[a.output(s,x)] == d.output(sm[s], lm[x])
            }));
            if ok { isos += 1; println!("iso A->dA: sm={:?} lm={:?}", sm, lm); }
        }
    }
    println!("total isos A->dA: {isos}, automorphism count of A = same");
    let _ = count;
}
