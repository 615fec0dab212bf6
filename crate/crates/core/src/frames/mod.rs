//! Exact affine algebra of inertial reference frames.

mod isomorphism;
mod transform;

pub use isomorphism::{affine_isomorphic, verify_witness, IsomorphismWitness};
pub use transform::{
    comoving_length, frame_to_absolute, length_in_frame, make_transform, map_worldlines,
    relative_characterization, relative_transform, velocity_addition, FrameTransform,
};
