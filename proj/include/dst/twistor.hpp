#pragma once

#include "dst/chart.hpp"
#include "dst/frames.hpp"
#include "dst/lorentz.hpp"
#include "dst/surface.hpp"

namespace dst {

/// Point of the twistor space Z: a pseudosphere point v paired with a future
/// unit timelike w orthogonal to it. The pair encodes the oriented spacelike
/// 2-plane [v ^ w]^perp.
struct TwistorPoint {
    Vec4 v;
    Vec4 w;

    /// constraint defect max(|<v,v>-1|, |<w,w>+1|, |<v,w>|), plus the
    /// future-pointing guard on w
    double defect() const;
    bool valid(double tol = 1e-10) const;
};

/// Base point o = (e1, e4).
TwistorPoint twistor_base_point();

struct TwistorLiftField {
    ChartGrid grid;
    Field<Vec4> v, w;
};

/// Pair an immersion with its future unit normal, checking the TwistorPoint
/// constraints nodewise; reports the first violating node.
TwistorLiftField lift(const Field<Vec4>& f, const Field<Vec4>& n);

/// Characteristic (Hopf) vector field h_(v,w) = (w,v), unit timelike for the
/// normal metric.
std::pair<Vec4, Vec4> hopf_vector(const TwistorPoint& p);

/// Right SO_o(1,1) action: (cosh t v + sinh t w, sinh t v + cosh t w).
TwistorPoint right_action(const TwistorPoint& p, double t);

/// Left action by g in SO_o(3,1).
TwistorPoint left_action(const Mat4& g, const TwistorPoint& p);

Vec4 project_base(const TwistorPoint& p);        // pi  (v,w) -> v
Vec4 project_hyperbolic(const TwistorPoint& p);  // pi'' (v,w) -> w

/// Metric-orthogonal projector onto the plane [v ^ w]^perp, the pi'-image.
/// P u = u - <u,v> v + <u,w> w; P^2 = P, rank 2, P v = P w = 0.
Mat4 project_plane(const TwistorPoint& p);

// --- invariant almost complex structures on the horizontal space -----------
//
// In the coordinates (x, y, z, w) of the horizontal pattern
//
//     [ 0  x  y  0 ]
//     [ -x 0  0  z ]
//     [ -y 0  0  w ]
//     [ 0  z  w  0 ]
//
// J' acts by (x,y,z,w) -> (-y,x,-w,z) and J'' by (x,y,z,w) -> (-y,x,w,-z):
// both rotate the lift of the tangent plane, J'' reverses the fiber rotation.

enum class Structure { JPrime, JDoublePrime };

bool is_horizontal(const Mat4& x, double tol = 1e-12);
bool is_horizontal(const CMat4& x, double tol = 1e-12);

/// Action at the base point; rejects non-horizontal input.
Mat4 J_horizontal(const Mat4& x, Structure which);
CMat4 J_horizontal(const CMat4& x, Structure which);

/// Invariant extension Ad(g) . J . Ad(g^{-1}) at the point g.o.
Mat4 J_at(const Mat4& g, const Mat4& x, Structure which);

// --- lift-level reports -------------------------------------------------------

/// The three holomorphicity scalars of a twistor lift, each computed two
/// ways: (a) directly from the surface data (|xi|, |H|, |2 xi H|), and (b)
/// through the frame connection matrices as the scaled eigenvector defect
/// ||J A_p - i A_p|| resp. |tr(A_p^2)/2|.
struct HolomorphicityReport {
    double j_prime_data = 0.0, j_prime_frame = 0.0;        // max |xi|
    double j_dprime_data = 0.0, j_dprime_frame = 0.0;      // max |H|
    double conformal_data = 0.0, conformal_frame = 0.0;    // max |2 xi H|
};

HolomorphicityReport holomorphicity_report(const SurfaceData& data);

/// |(A_p)_{(1,4)}| per node: the Hopf-direction component of the lift
/// derivative at the base-point model. Structurally zero for connections of
/// the structure-equation pattern.
Field<double> horizontality_residual(const ConnectionForm& cf);
Field<double> horizontality_residual(const SurfaceData& data);

}  // namespace dst
