//! Quotients by normal subgroups, realized as coset actions.
//!
//! The quotient G/N is represented faithfully: G acts by right multiplication
//! on the right cosets of N, and because N is normal the kernel of that
//! action is exactly N, so the induced permutation group on coset ids *is*
//! G/N. Coset ids follow first appearance in G's canonical element order, so
//! numbering is deterministic and coset 0 is always N itself.

use crate::error::GroupError;
use crate::group::Group;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;
use crate::Caps;
use std::sync::Arc;

/// A quotient map G → G/N with transport of subgroups in both directions.
pub struct QuotientMap {
    source: Arc<Group>,
    kernel: Subgroup,
    image: Arc<Group>,
    /// Canonical (lexicographically least) representative of each coset.
    reps: Vec<Permutation>,
    /// Coset id of each position in the source element index.
    coset_of: Vec<u16>,
}

impl QuotientMap {
    /// Builds the quotient of `group` by its normal subgroup `kernel`.
    pub fn new(group: &Arc<Group>, kernel: &Subgroup, caps: Caps) -> Result<QuotientMap, GroupError> {
        if !Arc::ptr_eq(kernel.ambient(), group)
            && !crate::group::same_element_set(kernel.ambient(), group)
        {
            return Err(GroupError::AmbientMismatch);
        }
        if !kernel.is_normal() {
            return Err(GroupError::NotNormal);
        }
        let idx = group.element_index(caps.element)?;
        let n_idx = kernel.group().element_index(caps.element)?;
        let count = (group.order() / kernel.order()) as usize;
        let mut coset_of: Vec<u16> = vec![u16::MAX; idx.len()];
        let mut reps: Vec<Permutation> = Vec::with_capacity(count);
        for pos in 0..idx.len() {
            if coset_of[pos] != u16::MAX {
                continue;
            }
            let cid = reps.len() as u16;
            let rep = idx.get(pos).clone();
            for n in n_idx.iter() {
                let member = n.mul(&rep);
                let mpos = idx
                    .position(&member)
                    .expect("coset member of a subgroup element stays in the group");
                debug_assert_eq!(coset_of[mpos], u16::MAX);
                coset_of[mpos] = cid;
            }
            reps.push(rep);
        }
        debug_assert_eq!(reps.len(), count);
        // Image generators: the permutation each source generator induces on
        // coset ids. All-identity images (G = N) collapse to the trivial group.
        let mut image_gens: Vec<Permutation> = Vec::new();
        for g in group.generators() {
            image_gens.push(action_on_cosets(idx, &coset_of, &reps, g)?);
        }
        let image = if image_gens.is_empty() {
            Group::trivial(count.max(1))
        } else {
            Group::from_generators_arc(&image_gens)?
        };
        // Normality of the kernel makes the action faithful on G/N.
        assert_eq!(
            image.order() * kernel.order(),
            group.order(),
            "coset action of a quotient by a normal subgroup must be faithful"
        );
        Ok(QuotientMap {
            source: group.clone(),
            kernel: kernel.clone(),
            image,
            reps,
            coset_of,
        })
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// The quotient group G/N as a permutation group on coset ids.
    pub fn image_group(&self) -> &Arc<Group> {
        &self.image
    }

    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    /// Canonical representative of coset `cid` (coset 0 is the kernel).
    pub fn rep(&self, cid: u16) -> &Permutation {
        &self.reps[cid as usize]
    }

    /// Image of a source element in the quotient group.
    pub fn map(&self, x: &Permutation) -> Result<Permutation, GroupError> {
        let idx = self.source.element_index(u64::MAX)?; // already built
        if idx.position(x).is_none() {
            return Err(GroupError::NotAMember);
        }
        action_on_cosets(idx, &self.coset_of, &self.reps, x)
    }

    /// Image HN/N of a subgroup H ≤ G, as a subgroup of the quotient group.
    pub fn image_of(&self, h: &Subgroup) -> Result<Subgroup, GroupError> {
        if !Arc::ptr_eq(h.ambient(), &self.source)
            && !crate::group::same_element_set(h.ambient(), &self.source)
        {
            return Err(GroupError::AmbientMismatch);
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in h.generators() {
            gens.push(self.map(g)?);
        }
        Subgroup::generated_in(&self.image, &gens)
    }

    /// Full preimage of a subgroup Y ≤ G/N, as a subgroup of G: generated by
    /// the kernel together with one coset representative per generator of Y
    /// (the coset a generator sends coset 0 to is the coset it represents).
    pub fn preimage_of(&self, y: &Subgroup) -> Result<Subgroup, GroupError> {
        if !Arc::ptr_eq(y.ambient(), &self.image)
            && !crate::group::same_element_set(y.ambient(), &self.image)
        {
            return Err(GroupError::AmbientMismatch);
        }
        let mut gens: Vec<Permutation> = self.kernel.generators().to_vec();
        for g in y.generators() {
            gens.push(self.reps[g.image(0) as usize].clone());
        }
        let sub = Subgroup::generated_in(&self.source, &gens)?;
        debug_assert_eq!(sub.order(), y.order() * self.kernel.order());
        Ok(sub)
    }
}

fn action_on_cosets(
    idx: &crate::group::ElementIndex,
    coset_of: &[u16],
    reps: &[Permutation],
    x: &Permutation,
) -> Result<Permutation, GroupError> {
    let mut images: Vec<u16> = Vec::with_capacity(reps.len());
    for rep in reps {
        let moved = rep.mul(x);
        let pos = idx
            .position(&moved)
            .ok_or(GroupError::NotAMember)?;
        images.push(coset_of[pos]);
    }
    Permutation::from_images(images)
}

impl std::fmt::Debug for QuotientMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientMap")
            .field("source_order", &self.source.order())
            .field("kernel_order", &self.kernel.order())
            .field("image_order", &self.image.order())
            .finish()
    }
}
