import logging
from dataclasses import dataclass, field
from typing import List, Optional

from core.errors import DomainError

PARTIES = ("Alice", "Bob", "Eve")


@dataclass(frozen=True)
class Event:
    party: str
    action: str
    bits: str = ""
    outcomes: str = ""
    recipient: Optional[str] = None

    def to_line(self, index: int) -> str:
        line = f"{index:04d} {self.party:<5} {self.action}"
        if self.recipient:
            line += f" -> {self.recipient}"
        if self.bits:
            line += f" bits={self.bits}"
        if self.outcomes:
            line += f" outcomes={self.outcomes}"
        return line


@dataclass
class Transcript:
    """Ordered record of what each party did and which classical messages crossed the channel.

    A party reads another party's data only through receive(), which fails unless the
    message was sent to it earlier.
    """
    events: List[Event] = field(default_factory=list)

    def _check_party(self, party: str):
        if party not in PARTIES:
            raise DomainError(f"unknown party {party!r}")

    def act(self, party: str, action: str, outcomes: str = "") -> "Transcript":
        self._check_party(party)
        self.events.append(Event(party, action, outcomes=outcomes))
        return self

    def send(self, party: str, recipient: str, label: str, bits: str) -> "Transcript":
        self._check_party(party)
        self._check_party(recipient)
        if any(ch not in "01" for ch in bits):
            raise DomainError(f"classical message {label!r} must be a bit string")
        self.events.append(Event(party, f"send {label}", bits=bits, recipient=recipient))
        return self

    def receive(self, party: str, label: str) -> str:
        for event in reversed(self.events):
            if event.action == f"send {label}" and event.recipient == party:
                self.events.append(Event(party, f"receive {label}"))
                return event.bits
        raise DomainError(f"{party} has not been sent a message labelled {label!r}")

    def messages_from(self, party: str) -> List[Event]:
        return [e for e in self.events if e.party == party and e.recipient is not None]

    def classical_bits_sent(self, party: Optional[str] = None) -> int:
        return sum(len(e.bits) for e in self.events if e.recipient is not None and (party is None or e.party == party))

    def count(self, action: str) -> int:
        return sum(1 for e in self.events if e.action == action)

    def to_lines(self) -> List[str]:
        return [e.to_line(i) for i, e in enumerate(self.events)]

    def log(self, level: int = logging.DEBUG):
        for line in self.to_lines():
            logging.log(level, line)
