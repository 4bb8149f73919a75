#pragma once

#include "dode/machine.hpp"

namespace dode {

/// Paired digit scheme for dyadic values: each binary digit b becomes
/// (position-marker, 2b+1) with marker 1 before the binary point and 3
/// after.  word_of(5.5) = "13111333".  Non-negative dyadics only (the
/// scheme carries no sign).
Word word_of(const Dyadic& d);

/// The pair-consuming transition as a length-ODE: state
/// (rest, int-acc, frac-acc, weight), one pair per stage, sentinel
/// dispatch over {5,7,13,15} on 16*rest.  Parameter: the encoded word.
LLODESystem encode_system();

/// Recovers the dyadic encoded by dbar = gamma_word(w) by running the
/// encode system for len(x_clock) stages (one per pair plus no-ops).
/// Throws NotInImage / OddLengthWord / BudgetExceeded.
Dyadic encode(const Int& x_clock, const Dyadic& dbar);

/// Digit word 2b+1 per bit b of n, MSB first.
Word decode_word(const Int& n);

/// gamma_word of decode_word: the canonical embedding of N into the
/// image set; injective, built on the div2/mod2 primitives.
Dyadic decode(const Int& n);

/// Bit-interleaving pairing for multi-argument encodings.
Int pair_interleave(const Int& a, const Int& b);

/// End-to-end run: decode the integer arguments onto the tape, run the
/// compiled machine within the B^(c) clock, re-encode the output word.
/// Returns exactly the dyadic the machine's output word denotes.
Dyadic direct_pipeline(const TMSpec& machine, unsigned c, const std::vector<Int>& args,
                       const Int& precision);

} // namespace dode
