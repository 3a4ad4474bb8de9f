"""Sequential abstract state machines over first-order states."""
