use super::{power, FinMap};

/// The set of all maps `a → b`, numbered in lexicographic order of images,
/// with evaluation `exp × a → b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponent {
    pub a: usize,
    pub b: usize,
    pub size: usize,
    pub eval: FinMap,
}

impl Exponent {
    pub fn index_of(&self, f: &FinMap) -> usize {
        f.images.iter().fold(0, |acc, &y| acc * self.b + y)
    }

    pub fn function(&self, index: usize) -> FinMap {
        let mut images = alloc::vec![0; self.a];
        let mut rest = index;
        for slot in images.iter_mut().rev() {
            *slot = rest % self.b.max(1);
            rest /= self.b.max(1);
        }
        FinMap { source: self.a, target: self.b, images }
    }
}

pub fn exponent(a: usize, b: usize) -> Exponent {
    let size = power(b, a);
    let mut e = Exponent { a, b, size, eval: FinMap { source: size * a, target: b, images: alloc::vec::Vec::new() } };
    let mut images = alloc::vec::Vec::with_capacity(size * a);
    for f in 0..size {
        images.extend(e.function(f).images);
    }
    e.eval.images = images;
    e
}

/// `c × a → b` to `c → exp(a, b)`.
pub fn curry(h: &FinMap, c: usize, e: &Exponent) -> FinMap {
    let images = (0..c)
        .map(|z| e.index_of(&FinMap { source: e.a, target: e.b, images: (0..e.a).map(|x| h.images[z * e.a + x]).collect() }))
        .collect();
    FinMap { source: c, target: e.size, images }
}

/// `c → exp(a, b)` to `c × a → b`.
pub fn uncurry(k: &FinMap, e: &Exponent) -> FinMap {
    let mut images = alloc::vec::Vec::with_capacity(k.source * e.a);
    for z in 0..k.source {
        for x in 0..e.a {
            images.push(e.eval.images[k.images[z] * e.a + x]);
        }
    }
    FinMap { source: k.source * e.a, target: e.b, images }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(exponent(2, 3).size, 9);
        assert_eq!(exponent(0, 3).size, 1);
        assert_eq!(exponent(0, 0).size, 1);
        assert_eq!(exponent(2, 0).size, 0);
    }

    #[test]
    fn curry_round_trip() {
        let (a, b, c) = (2, 2, 2);
        let e = exponent(a, b);
        let mut n = 0;
        for h in FinMap::all(c * a, b) {
            assert_eq!(uncurry(&curry(&h, c, &e), &e), h);
            n += 1;
        }
        assert_eq!(n, 16);
        for k in FinMap::all(c, e.size) {
            assert_eq!(curry(&uncurry(&k, &e), c, &e), k);
        }
    }

    #[test]
    fn eval_applies() {
        let e = exponent(2, 3);
        for (i, f) in FinMap::all(2, 3).enumerate() {
            assert_eq!(e.index_of(&f), i);
            assert_eq!(e.function(i), f);
            for x in 0..2 {
                assert_eq!(e.eval.images[i * 2 + x], f.images[x]);
            }
        }
    }
}
