use std::cmp::Ordering;

use crate::group::GroupBackend;

type Cmp<'a, T> = Box<dyn Fn(&T, &T) -> Ordering + 'a>;

/// Left order on an extension `N → Γ → Q` built from left orders on `N` and
/// on `Q`:
///
/// `g ≺ h` iff `gN ≺ hN`, or `gN = hN` and `h⁻¹g ≺ e` in `N`.
pub struct ExtensionOrder<'a, G: GroupBackend, N, Q> {
    group: G,
    order_n: Cmp<'a, N>,
    order_q: Cmp<'a, Q>,
    projection: Box<dyn Fn(&G::Elem) -> Q + 'a>,
    /// Identifies an element of the kernel with its `N`-representation.
    section: Box<dyn Fn(&G::Elem) -> N + 'a>,
}

impl<'a, G: GroupBackend, N, Q> ExtensionOrder<'a, G, N, Q> {
    pub fn new(
        group: G,
        order_n: impl Fn(&N, &N) -> Ordering + 'a,
        order_q: impl Fn(&Q, &Q) -> Ordering + 'a,
        projection: impl Fn(&G::Elem) -> Q + 'a,
        section: impl Fn(&G::Elem) -> N + 'a,
    ) -> Self {
        Self {
            group,
            order_n: Box::new(order_n),
            order_q: Box::new(order_q),
            projection: Box::new(projection),
            section: Box::new(section),
        }
    }

    pub fn compare(&self, g: &G::Elem, h: &G::Elem) -> Ordering {
        match (self.order_q)(&(self.projection)(g), &(self.projection)(h)) {
            Ordering::Equal => {
                let d = self.group.multiply(&self.group.invert(h), g);
                let e = (self.section)(&self.group.identity());
                (self.order_n)(&(self.section)(&d), &e)
            }
            other => other,
        }
    }
}
