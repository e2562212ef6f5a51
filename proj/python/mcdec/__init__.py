# Copyright 2026 The mcdec Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the mcdec decomposition library."""

from ._core import (
    InputError,
    NotUnitaryError,
    SizeLimitError,
    StructureError,
    decompose,
    gate_matrix,
    global_phase_of,
    grover_bench,
    prepare_bench,
    su2_part,
    verify,
)

__all__ = [
    "InputError",
    "NotUnitaryError",
    "SizeLimitError",
    "StructureError",
    "decompose",
    "gate_matrix",
    "global_phase_of",
    "grover_bench",
    "prepare_bench",
    "su2_part",
    "verify",
]
