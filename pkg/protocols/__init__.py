from .transcript import Event, Transcript
from .teleportation import teleport, dense_encode, dense_encoded_state, dense_decode, dense_coding
from .qkd import QKDSession, bb84_session, bbm92_session, eve_detection_probability, basis_string, run_sessions
from .classical import (RsaKeyPair, RsaBreak, text_to_digits, digits_to_text, text_to_number_string,
                        vernam_encrypt, vernam_decrypt, vernam_key_reuse_leak, rsa_keygen, rsa_private_from_euler,
                        rsa_encrypt, rsa_decrypt, split_blocks, rsa_break)

__all__ = [
    'Event', 'Transcript',
    'teleport', 'dense_encode', 'dense_encoded_state', 'dense_decode', 'dense_coding',
    'QKDSession', 'bb84_session', 'bbm92_session', 'eve_detection_probability', 'basis_string', 'run_sessions',
    'RsaKeyPair', 'RsaBreak', 'text_to_digits', 'digits_to_text', 'text_to_number_string',
    'vernam_encrypt', 'vernam_decrypt', 'vernam_key_reuse_leak', 'rsa_keygen', 'rsa_private_from_euler',
    'rsa_encrypt', 'rsa_decrypt', 'split_blocks', 'rsa_break',
]
