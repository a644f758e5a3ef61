"""A small call-by-name language with a globally angelic binary choice.

The package provides the surface syntax and parser, an equirecursive type
checker, the layered small-step semantics with fair choice scheduling, finite
approximations of the value domain with the choice-resolution data relation,
a formula layer with the realizability analyses, and the stream-conversion
corpus with exact rational digit oracles.
"""

from .errors import (AmbError, ParseError, OpenTermError, NonRegularTypeError,
                     BudgetError, FuelExhaustedError, MalformedOutputError,
                     OutOfRangeError, InvalidPickError, UnfairScheduleError)
from .parser import parse_program, parse_type, parse_file, inline_definitions
from .terms import (Program, Var, BVar, Lam, App, SApp, Rec, Con, Case,
                    Clause, BOTTOM, subst, free_vars, term_eq, to_source,
                    numeral, lam, case, clause, pair, amb, left, right, nil)
from .types import (Type, TVar, Sum, Prod, Arrow, AmbT, Fix, UNIT,
                    is_determined, is_regular, type_equal, type_to_source,
                    nat_type, stream, two_type, three_type, fix)
from .typecheck import check, check_definitions, TypingReport
from .opsem import (Schedule, Trace, is_whnf, is_dwhnf, is_bot_like,
                    step_head, step_choice_successors, step_parallel,
                    run_extract, run_extract_parallel, enumerate_schedules,
                    check_fair_window, head_normalize)
from .domain import (FiniteData, BOT, NIL, Le, Ri, Pair, AmbD, FunTag,
                     leq, lub, rank, data_set, select_data, is_data_elem,
                     is_reg_elem, denote_fuel, project_MD, truncate,
                     data_to_source)
from .gray import (gray_oracle, gray_program, gray_digit_term, DigitStream,
                   sd_value, sd_valid_prefix, gtos_run, decode_sd,
                   format_digits, tent)
from . import stdlib
from . import logic

__version__ = "0.1.0"
