# Copyright 2026 The qens Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Pure-state ensembles of density matrices, majorization, and the
entanglement transformation protocol. Thin layer over the C++ library."""

from ._qens import (
    DomainError,
    MajorizationError,
    ValidationError,
    __version__,
    check_majorization,
    check_schur_inequalities,
    comm_cost,
    corollary4_decompose,
    density_from_ensemble,
    entropy_report,
    hermitian_eig,
    horn_orthogonal,
    is_majorized_by,
    purify,
    random_density,
    reduced_density,
    relate_purifications,
    run_job,
    run_protocol,
    run_protocol_exhaustive,
    schmidt,
    schur_value,
    synthesize_ensemble,
    t_transform_chain,
    uniform_ensemble,
    unitary_to_stochastic,
    validate_density,
    verify_ensemble,
    weyl_op,
    weyl_twirl,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
