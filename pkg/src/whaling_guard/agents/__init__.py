"""Generation agents: backends, prompt assembly, prohibition screening, pipeline."""

from .backends import (
    API_KEY_ENV,
    BackendDescriptor,
    BackendError,
    ChatBackend,
    MockBackend,
    OpenAICompatBackend,
    ScriptedBackend,
    kind_from_system_text,
    stable_user_hash,
)
from .pipeline import (
    DEFAULT_MAX_REPAIRS,
    GenerationFailed,
    GenerationResult,
    PipelineResult,
    run_agent,
    run_offline_pipeline,
    write_profile_dir,
)
from .prohibitions import check_prohibited_output, load_prohibited_patterns
from .prompts import (
    GenerationInputs,
    IncompleteInputs,
    InternalInformation,
    PromptPair,
    PublicSource,
    assemble_prompt,
    load_template,
)
from .structured import extract_json_object

__all__ = [
    "API_KEY_ENV",
    "BackendDescriptor",
    "BackendError",
    "ChatBackend",
    "DEFAULT_MAX_REPAIRS",
    "GenerationFailed",
    "GenerationInputs",
    "GenerationResult",
    "IncompleteInputs",
    "InternalInformation",
    "MockBackend",
    "OpenAICompatBackend",
    "PipelineResult",
    "PromptPair",
    "PublicSource",
    "ScriptedBackend",
    "assemble_prompt",
    "check_prohibited_output",
    "extract_json_object",
    "kind_from_system_text",
    "load_prohibited_patterns",
    "load_template",
    "run_agent",
    "run_offline_pipeline",
    "stable_user_hash",
    "write_profile_dir",
]
