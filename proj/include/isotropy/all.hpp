#pragma once

#include "isotropy/errors.hpp"
#include "isotropy/exact_scalar.hpp"
#include "isotropy/exact_matrix.hpp"
#include "isotropy/canonical_forms.hpp"
#include "isotropy/toeplitz_form.hpp"
#include "isotropy/congruence_solver.hpp"
#include "isotropy/generators.hpp"
#include "isotropy/isotropy.hpp"
#include "isotropy/orbit.hpp"
#include "isotropy/random.hpp"
#include "isotropy/json_io.hpp"
#include "isotropy/acceptance.hpp"
