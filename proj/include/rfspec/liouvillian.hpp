#pragma once

#include <vector>

#include "rfspec/numerics.hpp"
#include "rfspec/operator_algebra.hpp"

namespace rfspec {

// Shipped emitter models. Both are driven at fixed laser frequencies and
// damped by spontaneous emission only:
//
//   TwoLevel  ground |1>, excited |2>; laser (rabi_1, detuning_1) on the
//             1-2 transition; decay |2> -> |1> at gamma_1.
//   Lambda    ground |1>, |2>, excited |3>; laser 1 (rabi_1, detuning_1)
//             couples |1>-|3>, laser 2 (rabi_2, detuning_2) couples
//             |2>-|3>; decay |3> -> |1> at gamma_1 and |3> -> |2> at
//             gamma_2.
//
// Conventions, used consistently everywhere downstream:
//   * rotating frame per driven transition, with the rotating-wave
//     approximation; H = -detuning_1 s33 - (detuning_1 - detuning_2) s22
//     + (rabi_1/2)(s31 + s13) + (rabi_2/2)(s32 + s23), hbar = 1.
//     rabi_* is the full Rabi frequency, so resonant sidebands sit at
//     +/- rabi.
//   * the spectrum's frequency axis is nu = omega - omega_1, the offset
//     from the center of the emission line, in units of gamma_1.
//   * the 1-2 coherence of the Lambda model evolves at the Raman
//     detuning detuning_1 - detuning_2 (doubly rotating frame).
enum class Model { TwoLevel, Lambda };

struct ModelConfig {
  Model model = Model::TwoLevel;
  double rabi_1 = 0.0;      // drives |1> <-> |highest>
  double rabi_2 = 0.0;      // drives |2> <-> |3>, Lambda only
  double detuning_1 = 0.0;
  double detuning_2 = 0.0;  // Lambda only
  double gamma_1 = 1.0;     // decay onto the observed transition, > 0
  double gamma_2 = 0.0;     // decay |3> -> |2>, Lambda only
  double geometry_factor = 1.0;  // dipole radiation-pattern factor u
};

// Throws InvalidConfig naming the offending field. TwoLevel ignores the
// *_2 fields.
void validate(const ModelConfig& config);

// The equations of motion d/dt X = Q X + R for the retained operator
// expectations. Q and R are produced by expanding the Lindblad generator
// on each basis slot, never by hand-transcribed coefficient tables, so
// both models share one construction path.
//
// live_slots lists the slots that the dynamics can ever connect to the
// ground state. It is all slots except when a Lambda arm is switched off
// exactly (rabi_2 == 0 and gamma_2 == 0): then level 2 is an inert
// spectator, every slot touching it keeps expectation zero, and the
// solvers pin those slots instead of treating the (rightly) singular full
// matrix as an error.
// raman_degenerate marks a Lambda model driven on both arms at exact
// Raman resonance (detuning_1 == detuning_2). The drive then has a dark
// superposition of the ground states; the atom is pumped into it and goes
// permanently silent, so there is no meaningful emission problem to solve.
// The steady-state solver refuses such configurations with a diagnosable
// error instead of reporting the trivial dark answer.
struct LiouvilleSystem {
  BasisMap basis;
  ComplexMatrix Q;
  ComplexVector R;
  ModelConfig config;
  std::vector<int> live_slots;
  bool raman_degenerate = false;

  int size() const { return static_cast<int>(Q.rows()); }
  bool all_live() const { return static_cast<int>(live_slots.size()) == size(); }
  bool is_live(int slot) const;
};

LiouvilleSystem build_two_level(const ModelConfig& config);
LiouvilleSystem build_lambda(const ModelConfig& config);

// Dispatches on config.model.
LiouvilleSystem build_system(const ModelConfig& config);

}  // namespace rfspec
